//! Exact solver for flower instances via 2-SAT.
//!
//! On a petal of length `L`, only two numbers matter to sets passing
//! through `z`: `l`, the 1-based position of the first pick, and `r`, the
//! distance of the last pick from the far end. Variables `X[a] = (l <= a)`
//! and `Y[c] = (r <= c)` form two monotone chains. Which `(l, r)` combos
//! are achievable, given the exact budget and the sets inside the petal,
//! is a staircase: `l <= a` forces `r >= g(a)`, where `g(a)` is the least
//! `r` reachable with first pick at or before `a`. A set through `z` has at
//! most two arms, so it is a clause of at most two literals.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::SolveError;
use crate::VertexSet;

use super::flower::FlowerInstance;
use super::intervals::stab_points;

/// Literal over variable `var`: `2 * var` is true, `2 * var + 1` false.
type Lit = usize;

fn pos(var: usize) -> Lit {
    2 * var
}

fn neg(var: usize) -> Lit {
    2 * var + 1
}

struct TwoSat {
    vars: usize,
    edges: Vec<(Lit, Lit)>,
}

impl TwoSat {
    fn clause(&mut self, a: Lit, b: Lit) {
        self.edges.push((a ^ 1, b));
        self.edges.push((b ^ 1, a));
    }

    fn solve(&self) -> Option<Vec<bool>> {
        let mut g = DiGraph::<(), ()>::new();
        let nodes: Vec<_> = (0..2 * self.vars).map(|_| g.add_node(())).collect();
        for &(a, b) in &self.edges {
            g.add_edge(nodes[a], nodes[b], ());
        }
        // Components come out in reverse topological order.
        let mut comp = vec![0; 2 * self.vars];
        for (i, scc) in tarjan_scc(&g).iter().enumerate() {
            for n in scc {
                comp[n.index()] = i;
            }
        }
        (0..self.vars)
            .map(|v| {
                let (t, f) = (comp[pos(v)], comp[neg(v)]);
                (t != f).then_some(t < f)
            })
            .collect()
    }
}

/// One petal seen as positions `0..len` with its interior intervals.
struct Petal {
    len: usize,
    budget: usize,
    intervals: Vec<(usize, usize)>,
}

impl Petal {
    /// Picks with first at `p` and last at `q`, or `None` if impossible.
    fn fill(&self, p: usize, q: usize) -> Option<Vec<usize>> {
        if self.budget == 1 && p != q || self.budget > q - p + 1 {
            return None;
        }
        let mut inner = Vec::new();
        for &(s, e) in &self.intervals {
            let hit = (s..=e).contains(&p) || (s..=e).contains(&q);
            if hit {
                continue;
            }
            if e < p || s > q {
                return None;
            }
            inner.push((s, e));
        }
        let mut picks = vec![p, q];
        picks.extend(stab_points(self.len, &inner).ok()?);
        picks.sort_unstable();
        picks.dedup();
        if picks.len() > self.budget {
            return None;
        }
        let mut pad = p..=q;
        while picks.len() < self.budget {
            let v = pad.next()?;
            if !picks.contains(&v) {
                picks.push(v);
            }
        }
        picks.sort_unstable();
        Some(picks)
    }

    /// `g[a - 1]` for `a` in `1..=len`: least `r` with first pick `<= a`.
    fn staircase(&self) -> Vec<Option<usize>> {
        let mut best: Option<usize> = None;
        let mut out = Vec::with_capacity(self.len);
        for p in 0..self.len {
            for q in (p..self.len).rev() {
                let r = self.len - q;
                if best.is_some_and(|b| b <= r) {
                    break;
                }
                if self.fill(p, q).is_some() {
                    best = Some(r);
                    break;
                }
            }
            out.push(best);
        }
        out
    }
}

/// Returns a solution, or `None` if the flower has none.
pub fn solve_hpfb(f: &FlowerInstance) -> Result<Option<VertexSet>, SolveError> {
    f.validate().map_err(SolveError::Precondition)?;
    let at = f.positions();
    let mut petals: Vec<Petal> = f
        .petals
        .iter()
        .zip(&f.budgets)
        .map(|(p, &b)| Petal { len: p.len(), budget: b, intervals: Vec::new() })
        .collect();
    let mut base = Vec::with_capacity(petals.len());
    let mut vars = 0;
    for p in &petals {
        base.push(vars);
        vars += 2 * p.len;
    }
    // X[i][a] is variable base + a - 1, Y[i][c] is base + len + c - 1.
    let x = |i: usize, a: usize| base[i] + a - 1;
    let y = |i: usize, c: usize| base[i] + f.petals[i].len() + c - 1;
    let mut sat = TwoSat { vars, edges: Vec::new() };
    let mut through: Vec<Vec<Lit>> = Vec::new();

    for path in &f.paths {
        if !path.contains(&f.z) {
            let spots: Vec<(usize, usize)> = path.iter().map(|v| at[v]).collect();
            let i = spots[0].0;
            let lo = spots.iter().map(|s| s.1).min().expect("nonempty");
            let hi = spots.iter().map(|s| s.1).max().expect("nonempty");
            petals[i].intervals.push((lo, hi));
            continue;
        }
        let mut lits = Vec::new();
        let mut settled = false;
        for (i, p) in f.petals.iter().enumerate() {
            let len = p.len();
            let from_left = p.iter().take_while(|v| path.contains(v)).count();
            if from_left == 0 && !path.contains(&p[len - 1]) {
                continue;
            }
            if from_left == len {
                // Whole petal: any pick hits it.
                settled = true;
                break;
            }
            let from_right = p.iter().rev().take_while(|v| path.contains(v)).count();
            if from_left > 0 {
                lits.push(pos(x(i, from_left)));
            }
            if from_right > 0 {
                lits.push(pos(y(i, from_right)));
            }
        }
        if settled {
            continue;
        }
        match lits[..] {
            [] => return Ok(None),
            [a] => sat.clause(a, a),
            [a, b] => sat.clause(a, b),
            _ => return Err(SolveError::Internal("set has more than two arms".into())),
        }
        through.push(lits);
    }

    for (i, p) in petals.iter().enumerate() {
        let len = p.len;
        for a in 1..len {
            sat.clause(neg(x(i, a)), pos(x(i, a + 1)));
            sat.clause(neg(y(i, a)), pos(y(i, a + 1)));
        }
        sat.clause(pos(x(i, len)), pos(x(i, len)));
        sat.clause(pos(y(i, len)), pos(y(i, len)));
        for (a, g) in p.staircase().into_iter().enumerate().map(|(j, g)| (j + 1, g)) {
            match g {
                None => sat.clause(neg(x(i, a)), neg(x(i, a))),
                Some(g) if g >= 2 => sat.clause(neg(x(i, a)), neg(y(i, g - 1))),
                Some(_) => {}
            }
        }
    }

    let Some(assign) = sat.solve() else {
        return Ok(None);
    };
    let mut solution = VertexSet::new();
    for (i, p) in petals.iter().enumerate() {
        let len = p.len;
        let l = (1..=len).find(|&a| assign[x(i, a)]).expect("X[len] holds");
        let r = (1..=len).find(|&c| assign[y(i, c)]).expect("Y[len] holds");
        let picks = (0..l)
            .flat_map(|s| (len - r..len).rev().filter(move |&q| q >= s).map(move |q| (s, q)))
            .find_map(|(s, q)| p.fill(s, q))
            .ok_or_else(|| SolveError::Internal("2-SAT model has no petal filling".into()))?;
        solution.extend(picks.into_iter().map(|j| f.petals[i][j]));
    }
    if !f.is_solution(&solution) {
        return Err(SolveError::Internal(format!("flower solution {solution:?} is invalid")));
    }
    Ok(Some(solution))
}

/// Exhaustive reference: every budget-sized subset of every petal.
pub fn hpfb_brute_force(f: &FlowerInstance) -> Option<VertexSet> {
    use itertools::Itertools;
    let options: Vec<Vec<Vec<usize>>> = f
        .petals
        .iter()
        .zip(&f.budgets)
        .map(|(p, &b)| p.iter().copied().combinations(b).collect())
        .collect();
    options
        .iter()
        .map(|o| o.iter())
        .multi_cartesian_product()
        .map(|choice| choice.into_iter().flatten().copied().collect::<VertexSet>())
        .find(|s| f.is_solution(s))
        .or_else(|| f.petals.is_empty().then(VertexSet::new).filter(|s| f.is_solution(s)))
}
