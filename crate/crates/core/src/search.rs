//! Enumeration of proper twists and zero-divisor search.
//!
//! With signs written as bits (`-1 -> 1`), each properness equation says that
//! the XOR of at most three table entries is zero. Entries in row and column
//! `e` are pinned to `+1`, leaving `(n-1)^2` free bits. The enumerator assigns
//! them depth-first in row-major order and forces the last unknown of any
//! equation as soon as the others are known.

use std::collections::HashSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Context, ExactElement};
use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::twists::{Law, PropertyReport, TwistKind, TwistTable};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Default, Serialize)]
pub struct SearchStats {
    /// Branching decisions taken.
    pub explored: u64,
    /// Decisions whose propagation hit a contradiction.
    pub pruned: u64,
    /// Entries assigned by propagation rather than branching.
    pub forced: u64,
    #[serde(serialize_with = "as_seconds")]
    pub elapsed: Duration,
}

fn as_seconds<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumerationResult {
    pub group: GroupSpec,
    /// Sorted by row-major sign vector, no duplicates.
    pub twists: Vec<TwistTable>,
    pub stats: SearchStats,
    pub complete: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwistFlags {
    pub commutative: bool,
    pub associative: bool,
    pub invertive: bool,
}

pub fn classify_table(t: &TwistTable) -> TwistFlags {
    TwistFlags {
        commutative: t.check_commutative().holds,
        associative: t.check_associative().holds,
        invertive: t.check_invertive().holds,
    }
}

pub fn classify(result: &EnumerationResult) -> Vec<TwistFlags> {
    result.twists.iter().map(classify_table).collect()
}

/// XOR constraints over the free entries, one per properness equation that
/// still has unknowns.
fn properness_constraints(group: GroupSpec) -> Vec<Vec<usize>> {
    let n = group.order();
    let var = |p: usize, q: usize| -> Option<usize> {
        (p != 0 && q != 0).then(|| (p - 1) * (n - 1) + (q - 1))
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for p in 0..n {
        for q in 0..n {
            let (pi, qi) = (group.inv(p), group.inv(q));
            let equations = [
                [(p, q), (q, qi), (group.op(p, q), qi)],
                [(pi, p), (p, q), (pi, group.op(p, q))],
            ];
            for eq in equations {
                let mut vars: Vec<usize> = eq.iter().filter_map(|&(a, b)| var(a, b)).collect();
                vars.sort_unstable();
                // x ^ x = 0
                let mut reduced: Vec<usize> = Vec::with_capacity(3);
                for v in vars {
                    if reduced.last() == Some(&v) {
                        reduced.pop();
                    } else {
                        reduced.push(v);
                    }
                }
                if !reduced.is_empty() && seen.insert(reduced.clone()) {
                    out.push(reduced);
                }
            }
        }
    }
    out
}

struct Solver {
    constraints: Vec<Vec<usize>>,
    watches: Vec<Vec<usize>>,
    value: Vec<Option<bool>>,
    trail: Vec<usize>,
    solutions: Vec<Vec<bool>>,
    stats: SearchStats,
    budget: u64,
    exhausted: bool,
}

impl Solver {
    fn new(vars: usize, constraints: Vec<Vec<usize>>, budget: u64) -> Self {
        let mut watches = vec![Vec::new(); vars];
        for (c, vs) in constraints.iter().enumerate() {
            for &v in vs {
                watches[v].push(c);
            }
        }
        Solver {
            constraints,
            watches,
            value: vec![None; vars],
            trail: Vec::new(),
            solutions: Vec::new(),
            stats: SearchStats::default(),
            budget,
            exhausted: false,
        }
    }

    fn assign(&mut self, v: usize, bit: bool) {
        self.value[v] = Some(bit);
        self.trail.push(v);
    }

    fn undo_to(&mut self, mark: usize) {
        for v in self.trail.drain(mark..) {
            self.value[v] = None;
        }
    }

    /// Propagates from the trail suffix starting at `from`; false on conflict.
    fn propagate(&mut self, mut from: usize) -> bool {
        while from < self.trail.len() {
            let v = self.trail[from];
            from += 1;
            for k in 0..self.watches[v].len() {
                let c = self.watches[v][k];
                let mut parity = false;
                let mut unknown = None;
                let mut unknowns = 0;
                for &u in &self.constraints[c] {
                    match self.value[u] {
                        Some(b) => parity ^= b,
                        None => {
                            unknowns += 1;
                            unknown = Some(u);
                        }
                    }
                }
                match (unknowns, unknown) {
                    (0, _) if parity => return false,
                    (1, Some(u)) => {
                        self.stats.forced += 1;
                        self.assign(u, parity);
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn run(&mut self) {
        let Some(v) = self.value.iter().position(Option::is_none) else {
            self.solutions
                .push(self.value.iter().map(|b| b.unwrap()).collect());
            return;
        };
        for bit in [false, true] {
            if self.stats.explored >= self.budget {
                self.exhausted = true;
                return;
            }
            self.stats.explored += 1;
            let mark = self.trail.len();
            self.assign(v, bit);
            if self.propagate(mark) {
                self.run();
            } else {
                self.stats.pruned += 1;
            }
            self.undo_to(mark);
            if self.exhausted {
                return;
            }
        }
    }
}

fn table_from_bits(group: GroupSpec, bits: &[bool]) -> Result<TwistTable> {
    let n = group.order();
    let mut signs = vec![1i8; n * n];
    for p in 1..n {
        for q in 1..n {
            if bits[(p - 1) * (n - 1) + (q - 1)] {
                signs[p * n + q] = -1;
            }
        }
    }
    let kind = if signs.iter().all(|&s| s == 1) {
        TwistKind::Trivial
    } else {
        TwistKind::Custom
    };
    TwistTable::from_signs(group, kind, signs)
}

fn sort_canonical(twists: &mut Vec<TwistTable>) {
    twists.sort_by(|a, b| a.signs().cmp(b.signs()));
    twists.dedup_by(|a, b| a.signs() == b.signs());
}

/// All proper twists on `group`, or a partial list if `node_budget`
/// branching decisions are not enough.
pub fn enumerate_proper_twists(group: GroupSpec, node_budget: u64) -> Result<EnumerationResult> {
    let start = Instant::now();
    let n = group.order();
    if n > crate::twists::MAX_TABLE_ORDER {
        return Err(Error::GroupTooLarge {
            order: n,
            limit: crate::twists::MAX_TABLE_ORDER,
        });
    }
    let vars = (n - 1) * (n - 1);
    let mut solver = Solver::new(vars, properness_constraints(group), node_budget);
    // constraints with a single unknown hold from the start
    let unit: Vec<(usize, bool)> = solver
        .constraints
        .iter()
        .filter(|c| c.len() == 1)
        .map(|c| (c[0], false))
        .collect();
    for (v, bit) in unit {
        if solver.value[v].is_none() {
            solver.assign(v, bit);
        }
    }
    if solver.propagate(0) {
        solver.run();
    }
    let mut twists = solver
        .solutions
        .iter()
        .map(|bits| table_from_bits(group, bits))
        .collect::<Result<Vec<_>>>()?;
    sort_canonical(&mut twists);
    let mut stats = solver.stats;
    stats.elapsed = start.elapsed();
    Ok(EnumerationResult {
        group,
        twists,
        stats,
        complete: !solver.exhausted,
    })
}

/// Checks that the enumerated set is an abelian group under pointwise
/// product with the trivial twist as identity.
#[derive(Debug, Clone, Serialize)]
pub struct TwistGroupReport {
    pub order: usize,
    pub closure: PropertyReport,
    pub identity: PropertyReport,
    pub self_inverse: PropertyReport,
    pub commutative: PropertyReport,
}

impl TwistGroupReport {
    pub fn holds(&self) -> bool {
        self.closure.holds
            && self.identity.holds
            && self.self_inverse.holds
            && self.commutative.holds
    }
}

pub fn verify_twist_group(result: &EnumerationResult) -> Result<TwistGroupReport> {
    if !result.complete {
        return Err(Error::IncompleteEnumeration);
    }
    let ts = &result.twists;
    let members: HashSet<&[i8]> = ts.iter().map(|t| t.signs()).collect();
    let pairs = || (0..ts.len()).flat_map(|i| (0..ts.len()).map(move |j| (i, j)));

    let closure = pairs()
        .find(|&(i, j)| {
            let prod = ts[i].product(&ts[j]).expect("same group");
            !members.contains(prod.signs())
        })
        .map(|(i, j)| vec![i, j]);
    let identity = (!ts.iter().any(TwistTable::is_all_ones)).then(Vec::new);
    let self_inverse = (0..ts.len())
        .find(|&i| !ts[i].product(&ts[i]).expect("same group").is_all_ones())
        .map(|i| vec![i]);
    let commutative = pairs()
        .find(|&(i, j)| {
            ts[i].product(&ts[j]).expect("same group").signs()
                != ts[j].product(&ts[i]).expect("same group").signs()
        })
        .map(|(i, j)| vec![i, j]);

    Ok(TwistGroupReport {
        order: ts.len(),
        closure: PropertyReport::from_witness(Law::TwistGroupClosure, closure),
        identity: PropertyReport::from_witness(Law::TwistGroupIdentity, identity),
        self_inverse: PropertyReport::from_witness(Law::TwistGroupSelfInverse, self_inverse),
        commutative: PropertyReport::from_witness(Law::TwistGroupCommutative, commutative),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroDivisorScope {
    /// Every `x = i_p ± i_q`, `y = i_r ± i_s` with `p < q`, `r < s`.
    BasisPairs,
    /// Random elements with coefficients in `{-1, 0, 1}`.
    Random { samples: u64, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct ZeroDivisorSearch {
    pub witness: Option<(ExactElement, ExactElement)>,
    pub candidates_checked: u64,
    /// True when the scope was scanned completely (basis pairs only).
    pub exhaustive: bool,
}

/// A sparse integer element `sum c_k i_{p_k}`.
type Sparse = Vec<(usize, i64)>;

fn sparse_is_zero_divisor_pair(
    table: &TwistTable,
    x: &Sparse,
    y: &Sparse,
    buf: &mut [i64],
) -> bool {
    let g = table.group();
    buf.iter_mut().for_each(|v| *v = 0);
    for &(p, a) in x {
        for &(q, b) in y {
            buf[g.op(p, q)] += table.sign(p, q) as i64 * a * b;
        }
    }
    buf.iter().all(|&v| v == 0)
}

fn to_exact(ctx: &Arc<Context>, x: &Sparse) -> ExactElement {
    let mut coeffs = vec![BigRational::from_integer(0.into()); ctx.order()];
    for &(p, c) in x {
        coeffs[p] = BigRational::from_integer(c.into());
    }
    ExactElement::new(ctx, coeffs).expect("dimension matches")
}

/// First `(x, y)` with `xy = 0` and both nonzero, confirmed by exact
/// multiplication.
pub fn find_zero_divisor(ctx: &Arc<Context>, scope: ZeroDivisorScope) -> ZeroDivisorSearch {
    let table = ctx.table();
    let n = ctx.order();
    let mut buf = vec![0i64; n];
    let mut checked = 0u64;
    let confirm = |x: &Sparse, y: &Sparse| {
        let (ex, ey) = (to_exact(ctx, x), to_exact(ctx, y));
        let prod = ex.multiply(&ey).expect("same context");
        assert!(
            prod.is_zero() && !ex.is_zero() && !ey.is_zero(),
            "integer scan and exact product disagree"
        );
        (ex, ey)
    };

    match scope {
        ZeroDivisorScope::BasisPairs => {
            let candidates: Vec<Sparse> = (0..n)
                .flat_map(|p| {
                    ((p + 1)..n).flat_map(move |q| [-1i64, 1].map(|s| vec![(p, 1), (q, s)]))
                })
                .collect();
            for x in &candidates {
                for y in &candidates {
                    checked += 1;
                    if sparse_is_zero_divisor_pair(table, x, y, &mut buf) {
                        return ZeroDivisorSearch {
                            witness: Some(confirm(x, y)),
                            candidates_checked: checked,
                            exhaustive: false,
                        };
                    }
                }
            }
            ZeroDivisorSearch {
                witness: None,
                candidates_checked: checked,
                exhaustive: true,
            }
        }
        ZeroDivisorScope::Random { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let draw = |rng: &mut ChaCha8Rng| -> Sparse {
                loop {
                    let x: Sparse = (0..n)
                        .filter_map(|p| match rng.gen_range(-1i64..=1) {
                            0 => None,
                            c => Some((p, c)),
                        })
                        .collect();
                    if !x.is_empty() {
                        return x;
                    }
                }
            };
            for _ in 0..samples {
                let x = draw(&mut rng);
                let y = draw(&mut rng);
                checked += 1;
                if sparse_is_zero_divisor_pair(table, &x, &y, &mut buf) {
                    return ZeroDivisorSearch {
                        witness: Some(confirm(&x, &y)),
                        candidates_checked: checked,
                        exhaustive: false,
                    };
                }
            }
            ZeroDivisorSearch {
                witness: None,
                candidates_checked: checked,
                exhaustive: false,
            }
        }
    }
}
