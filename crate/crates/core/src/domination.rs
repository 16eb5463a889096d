//! Degree-one obstructions and finite target censuses.
//!
//! A degree-one map `M → N` forces `|Tor H_1(N)|` to divide `|Tor H_1(M)|`,
//! `SV(N) <= SV(M)` and `rank π_1(N) <= rank π_1(M)`; for a Seifert target
//! with `e = 0` the minimal horizontal surface must also fit under the
//! Thurston norm budget of `M`. Given such budgets, the targets passing every
//! check form a finite set, and the enumerators here list it exactly. The
//! checks are necessary conditions only: a census is a superset of what `M`
//! actually dominates.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::homology;
use crate::json::fmt_rational;
use crate::seifert::{enumerate_flat_bases, GeometryClass, InvariantSummary, SeifertData};
use crate::torus_bundle::{self, AnosovMatrix, MAX_TRACE_BOUND};

/// Hurwitz bound: `χ < 0` implies `χ <= -1/42`.
pub const HURWITZ: i64 = 42;

/// Largest torsion budget the enumerators accept.
pub const MAX_TORSION_BUDGET: u64 = 1 << 40;

/// Invariant budgets of a hypothetical dominating manifold `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationBudget {
    /// `|Tor H_1(M; Z)|`, at least 1.
    pub torsion_order: BigInt,
    /// Upper bound for `rank π_1(M)`.
    pub rank_bound: i64,
    /// Upper bound for `SV(M)`.
    pub sv_bound: BigRational,
    /// Upper bound `L` for the Thurston norms of a basis of `H_2(M)`.
    pub norm_budget: BigInt,
}

impl DominationBudget {
    pub fn new(
        torsion_order: BigInt,
        rank_bound: i64,
        sv_bound: BigRational,
        norm_budget: BigInt,
    ) -> Result<Self> {
        if torsion_order < BigInt::one() {
            return Err(Error::InvalidBound(format!(
                "torsion_order must be at least 1, got {torsion_order}"
            )));
        }
        if rank_bound < 0 {
            return Err(Error::InvalidBound(format!(
                "rank_bound must be non-negative, got {rank_bound}"
            )));
        }
        if sv_bound.is_negative() {
            return Err(Error::InvalidBound(format!(
                "sv_bound must be non-negative, got {}",
                fmt_rational(&sv_bound)
            )));
        }
        if norm_budget.is_negative() {
            return Err(Error::InvalidBound(format!(
                "norm_budget must be non-negative, got {norm_budget}"
            )));
        }
        Ok(DominationBudget {
            torsion_order,
            rank_bound,
            sv_bound,
            norm_budget,
        })
    }

    /// Convenience constructor; `sv_bound = sv_num / sv_den`.
    pub fn from_ints(torsion: i64, rank: i64, sv_num: i64, sv_den: i64, norm: i64) -> Result<Self> {
        if sv_den <= 0 {
            return Err(Error::InvalidBound(
                "sv_bound denominator must be positive".into(),
            ));
        }
        Self::new(
            BigInt::from(torsion),
            rank,
            BigRational::new(BigInt::from(sv_num), BigInt::from(sv_den)),
            BigInt::from(norm),
        )
    }

    /// True if every component is at most the corresponding one of `other`,
    /// with torsion compared by divisibility.
    pub fn is_below(&self, other: &DominationBudget) -> bool {
        other.torsion_order.is_multiple_of(&self.torsion_order)
            && self.rank_bound <= other.rank_bound
            && self.sv_bound <= other.sv_bound
            && self.norm_budget <= other.norm_budget
    }
}

/// A candidate target manifold.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Target {
    Seifert(SeifertData),
    Bundle(AnosovMatrix),
}

impl Target {
    pub fn case_tag(&self) -> Option<CaseTag> {
        match self {
            Target::Seifert(n) => match n.classify_geometry() {
                GeometryClass::H2xE1 => Some(CaseTag::A),
                GeometryClass::TildePSL2R | GeometryClass::Nil => Some(CaseTag::B),
                GeometryClass::OutOfScope => None,
            },
            Target::Bundle(_) => Some(CaseTag::C),
        }
    }

    /// `|Tor H_1|`: closed form when available, homology oracle otherwise.
    pub fn torsion_order(&self) -> BigInt {
        match self {
            Target::Seifert(n) => n
                .torsion_order_formula()
                .unwrap_or_else(|_| homology::h1_seifert(n).torsion_order()),
            Target::Bundle(a) => a.bundle_torsion_order(),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Seifert(n) => n.fmt(f),
            Target::Bundle(a) => a.fmt(f),
        }
    }
}

/// The three target classes: `e = 0, χ < 0`; `e ≠ 0, χ <= 0`; Sol bundles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    A,
    B,
    C,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::A => "a",
            CaseTag::B => "b",
            CaseTag::C => "c",
        }
    }
}

pub const CHECK_TORSION: &str = "torsion_divides";
pub const CHECK_SV: &str = "sv_bound";
pub const CHECK_RANK: &str = "rank_bound";
pub const CHECK_NORM: &str = "norm_budget";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    /// Exact value for the target, as an integer or `p/q` string.
    pub value: String,
    pub bound: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
    /// The torsion order the divisibility check used.
    pub torsion: BigInt,
}

fn outcome(name: &'static str, value: String, bound: String, passed: bool) -> CheckOutcome {
    CheckOutcome {
        name,
        value,
        bound,
        passed,
    }
}

/// Evaluate every applicable obstruction for `target` against `budget`.
pub fn check_necessary_conditions(budget: &DominationBudget, target: &Target) -> Verdict {
    let torsion = target.torsion_order();
    let mut checks = vec![outcome(
        CHECK_TORSION,
        torsion.to_string(),
        budget.torsion_order.to_string(),
        budget.torsion_order.is_multiple_of(&torsion),
    )];
    if let Target::Seifert(n) = target {
        if let Ok(sv) = n.sv_volume() {
            checks.push(outcome(
                CHECK_SV,
                fmt_rational(&sv),
                fmt_rational(&budget.sv_bound),
                sv <= budget.sv_bound,
            ));
        }
        let rank = n.rank_lower_bound();
        checks.push(outcome(
            CHECK_RANK,
            rank.to_string(),
            budget.rank_bound.to_string(),
            rank <= budget.rank_bound,
        ));
        if let Ok(h) = n.minimal_horizontal() {
            checks.push(outcome(
                CHECK_NORM,
                h.chi_minus.to_string(),
                budget.norm_budget.to_string(),
                h.chi_minus <= budget.norm_budget,
            ));
        }
    }
    Verdict {
        passed: checks.iter().all(|c| c.passed),
        checks,
        torsion,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetInvariants {
    Seifert(InvariantSummary),
    Bundle { trace: BigInt },
}

/// One census entry: a target, its class, its invariants and the checks it
/// passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    pub target: Target,
    pub case: CaseTag,
    pub invariants: TargetInvariants,
    pub torsion: BigInt,
    pub checks: Vec<CheckOutcome>,
}

impl CensusRecord {
    fn build(target: Target, verdict: Verdict) -> Self {
        let case = target.case_tag().expect("census targets are in scope");
        let invariants = match &target {
            Target::Seifert(n) => TargetInvariants::Seifert(n.summary()),
            Target::Bundle(a) => TargetInvariants::Bundle { trace: a.trace() },
        };
        CensusRecord {
            target,
            case,
            invariants,
            torsion: verdict.torsion,
            checks: verdict.checks,
        }
    }
}

/// The search cutoffs derived from a budget. Every census member lies
/// inside them, which is what makes each enumeration finite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchCutoffs {
    /// From `2g + n - 2 <= r`.
    pub max_genus: u32,
    /// From `2g + n - 2 <= r` at `g = 0`.
    pub max_fibers: usize,
    /// `∏ a_i <= 1764·T·V` for `TildePSL2R` targets.
    pub product_cap: BigInt,
    /// `lcm(a_i) <= 42·L` for `e = 0` targets.
    pub lcm_cap: BigInt,
    /// Positive divisors of `T`: the admissible torsion orders.
    pub torsion_divisors: Vec<BigInt>,
    /// Admissible bundle traces `t`, `|2 - t|` dividing `T`, `|t| > 2`.
    pub traces: Vec<i64>,
}

impl SearchCutoffs {
    pub fn from_budget(budget: &DominationBudget) -> Result<Self> {
        let divisors = divisors_of(&budget.torsion_order)?;
        let mut traces: Vec<i64> = divisors
            .iter()
            .flat_map(|&t| [2 - t as i64, 2 + t as i64])
            .filter(|t| t.abs() > 2)
            .collect();
        traces.sort_unstable();
        traces.dedup();
        let r = budget.rank_bound;
        let hurwitz_sq = BigRational::from_integer(BigInt::from(HURWITZ * HURWITZ));
        Ok(SearchCutoffs {
            max_genus: u32::try_from((r + 2) / 2).unwrap_or(u32::MAX),
            max_fibers: usize::try_from(r + 2).unwrap_or(usize::MAX),
            product_cap: (hurwitz_sq
                * BigRational::from_integer(budget.torsion_order.clone())
                * &budget.sv_bound)
                .floor()
                .to_integer(),
            lcm_cap: &budget.norm_budget * HURWITZ,
            torsion_divisors: divisors.into_iter().map(BigInt::from).collect(),
            traces,
        })
    }
}

/// A census together with the cutoffs that certify its finiteness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub records: Vec<CensusRecord>,
    pub cutoffs: SearchCutoffs,
    /// Traces whose class partition changed above the first BFS cap.
    pub unstable_traces: Vec<i64>,
}

fn divisors_of(n: &BigInt) -> Result<Vec<u64>> {
    let n = n
        .to_u64()
        .filter(|n| (1..=MAX_TORSION_BUDGET).contains(n))
        .ok_or_else(|| Error::SearchTooLarge(format!("torsion budget {n}")))?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut p = 1;
    while p * p <= n {
        if n % p == 0 {
            small.push(p);
            if p * p != n {
                large.push(n / p);
            }
        }
        p += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

type Q = Ratio<i128>;

fn q(n: i128) -> Q {
    Q::from_integer(n)
}

fn to_i128(x: &BigInt, what: &str) -> Result<i128> {
    x.to_i128()
        .filter(|v| v.unsigned_abs() < 1u128 << 80)
        .ok_or_else(|| Error::SearchTooLarge(format!("{what} = {x}")))
}

/// Visit every non-decreasing tuple of `n` multiplicities `>= 2`.
///
/// `step(prefix, slots_left)` is called with the last element just pushed
/// and decides whether to descend, skip this value, or stop increasing it.
/// Stopping must be monotone: if it holds for `a` it holds for every larger
/// last element with the same earlier prefix.
fn multiplicity_tuples(
    n: usize,
    step: &mut dyn FnMut(&[i64], usize) -> Step,
    visit: &mut dyn FnMut(&[i64]),
) {
    fn go(
        n: usize,
        acc: &mut Vec<i64>,
        step: &mut dyn FnMut(&[i64], usize) -> Step,
        visit: &mut dyn FnMut(&[i64]),
    ) {
        if acc.len() == n {
            visit(acc);
            return;
        }
        let mut a = acc.last().copied().unwrap_or(2);
        loop {
            acc.push(a);
            let left = n - acc.len();
            match step(acc, left) {
                Step::Descend => go(n, acc, step, visit),
                Step::Skip => {}
                Step::Stop => {
                    acc.pop();
                    break;
                }
            }
            acc.pop();
            a += 1;
        }
    }
    let mut acc = Vec::with_capacity(n);
    go(n, &mut acc, step, visit);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Descend,
    Skip,
    Stop,
}

/// Orbifold Euler characteristic of `genus` plus the cone points in
/// `prefix`, and the largest value any completion with `left` more cone
/// points of order `>= prefix.last()` can reach (`upper`), and the limit as
/// the last order grows without bound (`limit`).
fn chi_bounds(genus: u32, prefix: &[i64], left: usize) -> (Q, Q) {
    let mut chi = q(2 - 2 * i128::from(genus));
    for &a in prefix {
        chi -= q(1) - Q::new(1, i128::from(a));
    }
    let last = i128::from(*prefix.last().expect("non-empty prefix"));
    let upper = chi - q(left as i128) * (q(1) - Q::new(1, last));
    let limit = {
        // every order in prefix.last() and after tends to infinity
        let mut l = q(2 - 2 * i128::from(genus));
        for &a in &prefix[..prefix.len() - 1] {
            l -= q(1) - Q::new(1, i128::from(a));
        }
        l - q(left as i128 + 1)
    };
    (upper, limit)
}

fn chi_of(genus: u32, tuple: &[i64]) -> Q {
    tuple.iter().fold(q(2 - 2 * i128::from(genus)), |acc, &a| {
        acc - (q(1) - Q::new(1, i128::from(a)))
    })
}

fn lcm_of(tuple: &[i64]) -> i128 {
    tuple.iter().fold(1i128, |acc, &a| acc.lcm(&i128::from(a)))
}

/// Every standard-form fiber list over the multiplicities `mults`
/// (non-decreasing) and section obstruction `b` with `e · ∏ a_i = target`,
/// for each `target` in `targets`.
fn solve_fibers(mults: &[i64], targets: &[i128], out: &mut dyn FnMut(&[i64], i128)) {
    let p: i128 = mults.iter().map(|&a| i128::from(a)).product();
    let n = mults.len();
    if n == 0 {
        for &t in targets {
            // e = -b
            out(&[], -t);
        }
        return;
    }
    let weights: Vec<i128> = mults.iter().map(|&a| p / i128::from(a)).collect();
    let mut bs = vec![0i64; n];

    #[allow(clippy::too_many_arguments)]
    fn prefix(
        i: usize,
        s: i128,
        mults: &[i64],
        weights: &[i128],
        p: i128,
        targets: &[i128],
        bs: &mut [i64],
        out: &mut dyn FnMut(&[i64], i128),
    ) {
        let n = mults.len();
        let a = mults[i];
        let lo = if i > 0 && mults[i - 1] == a {
            bs[i - 1]
        } else {
            1
        };
        if i == n - 1 {
            // e·P = -(b·P + S) = target  ⇔  S ≡ -target (mod P)
            let w = weights[i];
            for &t in targets {
                let r = (-t - s).rem_euclid(p);
                if r % w != 0 {
                    continue;
                }
                let bi = (r / w).rem_euclid(i128::from(a)) as i64;
                if bi < lo || bi.gcd(&a) != 1 {
                    continue;
                }
                let total = s + w * i128::from(bi);
                let b = (-t - total) / p;
                debug_assert_eq!(b * p + total, -t);
                bs[i] = bi;
                out(bs, b);
            }
            return;
        }
        for bi in lo..a {
            if bi.gcd(&a) != 1 {
                continue;
            }
            bs[i] = bi;
            prefix(
                i + 1,
                s + weights[i] * i128::from(bi),
                mults,
                weights,
                p,
                targets,
                bs,
                out,
            );
        }
    }

    prefix(0, 0, mults, &weights, p, targets, &mut bs, out);
}

fn build_seifert(genus: u32, mults: &[i64], bs: &[i64], b: i128) -> SeifertData {
    let fibers = mults
        .iter()
        .zip(bs)
        .map(|(&a, &bi)| (BigInt::from(a), BigInt::from(bi)))
        .collect();
    SeifertData::new(genus, BigInt::from(b), fibers).expect("generated fibers are valid")
}

/// Keep `candidate` (under its canonical orientation) if it passes every
/// check and belongs to `case`.
fn admit(
    budget: &DominationBudget,
    case: CaseTag,
    candidate: SeifertData,
    found: &mut BTreeMap<SeifertData, CensusRecord>,
) {
    let key = candidate.canonical_orientation();
    if found.contains_key(&key) {
        return;
    }
    let target = Target::Seifert(key.clone());
    if target.case_tag() != Some(case) {
        return;
    }
    let verdict = check_necessary_conditions(budget, &target);
    if verdict.passed {
        found.insert(key, CensusRecord::build(target, verdict));
    }
}

/// Genus and fiber-count pairs allowed by the rank filter.
fn shapes(budget: &DominationBudget) -> Vec<(u32, usize)> {
    let r = budget.rank_bound;
    let mut out = Vec::new();
    let mut g: i64 = 0;
    while 2 * g - 2 <= r {
        let max_n = r + 2 - 2 * g;
        for n in 0..=max_n {
            out.push((g as u32, n as usize));
        }
        g += 1;
    }
    out
}

/// Case (a): `e = 0`, `χ < 0` (`H² × E¹` geometry).
///
/// `lcm(a_i)·|χ| <= L` with `|χ| >= 1/42` gives `a_i <= lcm(a_i) <= 42L`;
/// `e = 0` forces `Σ b_i/a_i ∈ Z` and fixes `b`.
pub fn enumerate_case_a(budget: &DominationBudget) -> Result<Vec<CensusRecord>> {
    let l = to_i128(&budget.norm_budget, "norm_budget")?;
    let mut found = BTreeMap::new();
    if l == 0 {
        return Ok(Vec::new());
    }
    let lcm_cap = l * i128::from(HURWITZ);
    let lq = q(l);
    for (genus, n) in shapes(budget) {
        let mut tuples = Vec::new();
        if n == 0 {
            tuples.push(Vec::new());
        } else {
            multiplicity_tuples(
                n,
                &mut |prefix, left| {
                    let a = i128::from(*prefix.last().unwrap());
                    if a > lcm_cap {
                        return Step::Stop;
                    }
                    let (upper, limit) = chi_bounds(genus, prefix, left);
                    if limit >= q(0) {
                        return Step::Stop;
                    }
                    if upper < q(0) {
                        // lcm >= a, and a·|upper| only grows with a
                        if q(a) * -upper > lq {
                            return Step::Stop;
                        }
                        if q(lcm_of(prefix)) * -upper > lq {
                            return Step::Skip;
                        }
                    }
                    Step::Descend
                },
                &mut |t| tuples.push(t.to_vec()),
            );
        }
        for mults in tuples {
            let chi = chi_of(genus, &mults);
            if chi >= q(0) || q(lcm_of(&mults)) * -chi > lq {
                continue;
            }
            solve_fibers(&mults, &[0], &mut |bs, b| {
                admit(
                    budget,
                    CaseTag::A,
                    build_seifert(genus, &mults, bs, b),
                    &mut found,
                );
            });
        }
    }
    Ok(found.into_values().collect())
}

/// Case (b): `e ≠ 0`, `χ <= 0` (`Nil` and `TildePSL2R`).
///
/// The torsion order `|e|·∏ a_i` is a divisor `t` of `T`, which fixes `b`
/// once the `b_i` are chosen. `χ = 0` bases are the finitely many flat
/// ones. For `χ < 0`, `SV = χ²/|e| <= V` turns into `∏ a_i · χ² <= V·t`,
/// and `|χ| >= 1/42` gives `∏ a_i <= 1764·T·V`.
pub fn enumerate_case_b(budget: &DominationBudget) -> Result<Vec<CensusRecord>> {
    let divisors: Vec<i128> = divisors_of(&budget.torsion_order)?
        .into_iter()
        .map(i128::from)
        .collect();
    let signed =
        |ts: &mut dyn Iterator<Item = i128>| -> Vec<i128> { ts.flat_map(|t| [t, -t]).collect() };
    let mut found = BTreeMap::new();

    // Nil: flat bases
    let all = signed(&mut divisors.iter().copied());
    for base in enumerate_flat_bases() {
        let n = base.cone_orders.len() as i64;
        if 2 * i64::from(base.genus) + n - 2 > budget.rank_bound {
            continue;
        }
        let mults: Vec<i64> = base.cone_orders.iter().map(|&a| i64::from(a)).collect();
        solve_fibers(&mults, &all, &mut |bs, b| {
            admit(
                budget,
                CaseTag::B,
                build_seifert(base.genus, &mults, bs, b),
                &mut found,
            );
        });
    }

    // TildePSL2R
    if budget.sv_bound.is_positive() {
        let v = Q::new(
            to_i128(budget.sv_bound.numer(), "sv_bound")?,
            to_i128(budget.sv_bound.denom(), "sv_bound")?,
        );
        let t_max = *divisors.last().expect("T >= 1");
        let vt = v * q(t_max);
        let product_cap = (vt * q(i128::from(HURWITZ * HURWITZ))).floor().to_integer();
        for (genus, n) in shapes(budget) {
            let mut tuples = Vec::new();
            if n == 0 {
                tuples.push(Vec::new());
            } else {
                multiplicity_tuples(
                    n,
                    &mut |prefix, left| {
                        let a = i128::from(*prefix.last().unwrap());
                        let before: i128 = prefix[..prefix.len() - 1]
                            .iter()
                            .map(|&x| i128::from(x))
                            .product();
                        let min_product = (0..=left).try_fold(before, |acc, _| acc.checked_mul(a));
                        let Some(min_product) = min_product.filter(|p| *p <= product_cap) else {
                            return Step::Stop;
                        };
                        let (upper, limit) = chi_bounds(genus, prefix, left);
                        if limit >= q(0) {
                            return Step::Stop;
                        }
                        if upper < q(0) && q(min_product) * upper * upper > vt {
                            return Step::Stop;
                        }
                        Step::Descend
                    },
                    &mut |t| tuples.push(t.to_vec()),
                );
            }
            for mults in tuples {
                let chi = chi_of(genus, &mults);
                if chi >= q(0) {
                    continue;
                }
                let p: i128 = mults.iter().map(|&a| i128::from(a)).product();
                let weight = q(p) * chi * chi;
                // SV = χ²·P/t <= V
                let targets = signed(&mut divisors.iter().copied().filter(|&t| weight <= v * q(t)));
                if targets.is_empty() {
                    continue;
                }
                solve_fibers(&mults, &targets, &mut |bs, b| {
                    admit(
                        budget,
                        CaseTag::B,
                        build_seifert(genus, &mults, bs, b),
                        &mut found,
                    );
                });
            }
        }
    }
    Ok(found.into_values().collect())
}

/// Case (c): Sol torus bundles. `|2 - t|` divides `T`, so the trace `t` runs
/// over `2 ± d` for divisors `d` of `T`; each trace contributes one record
/// per SL(2,Z) conjugacy class. `cap` overrides the first BFS working cap.
pub fn enumerate_case_c(budget: &DominationBudget, cap: Option<i64>) -> Result<Vec<CensusRecord>> {
    let cutoffs = SearchCutoffs::from_budget(budget)?;
    let mut out = Vec::new();
    for &t in &cutoffs.traces {
        if t.abs() > MAX_TRACE_BOUND {
            return Err(Error::SearchTooLarge(format!("bundle trace {t}")));
        }
        let part = torus_bundle::trace_classes(t, cap)?;
        for class in &part.classes {
            let target = Target::Bundle(class.representative.clone());
            let verdict = check_necessary_conditions(budget, &target);
            if verdict.passed {
                out.push(CensusRecord::build(target, verdict));
            }
        }
    }
    Ok(out)
}

/// The full census: cases (a), (b), (c) in that order, each sorted by its
/// canonical key.
pub fn enumerate_all(budget: &DominationBudget, cap: Option<i64>) -> Result<Census> {
    let cutoffs = SearchCutoffs::from_budget(budget)?;
    let mut records = enumerate_case_a(budget)?;
    records.extend(enumerate_case_b(budget)?);
    records.extend(enumerate_case_c(budget, cap)?);
    let mut unstable_traces = Vec::new();
    for &t in &cutoffs.traces {
        // cached by enumerate_case_c
        if !torus_bundle::trace_classes(t, cap)?.initial_cap_stable {
            unstable_traces.push(t);
        }
    }
    Ok(Census {
        records,
        cutoffs,
        unstable_traces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sd(g: u32, b: i64, f: &[(i64, i64)]) -> SeifertData {
        SeifertData::from_ints(g, b, f).unwrap()
    }

    fn budget(t: i64, r: i64, v: (i64, i64), l: i64) -> DominationBudget {
        DominationBudget::from_ints(t, r, v.0, v.1, l).unwrap()
    }

    fn contains(records: &[CensusRecord], n: &SeifertData) -> bool {
        records
            .iter()
            .any(|r| matches!(&r.target, Target::Seifert(m) if m.same_manifold(n)))
    }

    #[test]
    fn check_examples() {
        let nil = Target::Seifert(sd(0, 1, &[(2, 1), (3, 1), (6, 1)]));
        let v = check_necessary_conditions(&budget(1, 10, (10, 1), 10), &nil);
        assert!(!v.passed);
        assert_eq!(v.checks[0].name, CHECK_TORSION);
        assert_eq!(
            (v.checks[0].value.as_str(), v.checks[0].passed),
            ("72", false)
        );

        let v = check_necessary_conditions(&budget(72, 1, (1, 1), 0), &nil);
        assert!(v.passed);
        let names: Vec<_> = v.checks.iter().map(|c| c.name).collect();
        assert_eq!(names, [CHECK_TORSION, CHECK_RANK]);

        let cat = Target::Bundle(AnosovMatrix::from_ints(2, 1, 1, 1).unwrap());
        let v = check_necessary_conditions(&budget(5, 4, (1, 1), 4), &cat);
        assert!(v.passed);
        assert_eq!(v.torsion, BigInt::one());
    }

    #[test]
    fn budget_validation() {
        assert!(DominationBudget::from_ints(0, 1, 1, 1, 0).is_err());
        assert!(DominationBudget::from_ints(1, -1, 1, 1, 0).is_err());
        assert!(DominationBudget::from_ints(1, 1, -1, 1, 0).is_err());
        assert!(DominationBudget::from_ints(1, 1, 1, 1, -2).is_err());
    }

    #[test]
    fn divisors() {
        assert_eq!(
            divisors_of(&BigInt::from(72)).unwrap(),
            [1, 2, 3, 4, 6, 8, 9, 12, 18, 24, 36, 72]
        );
        assert_eq!(divisors_of(&BigInt::from(1)).unwrap(), [1]);
        assert_eq!(divisors_of(&BigInt::from(49)).unwrap(), [1, 7, 49]);
    }

    #[test]
    fn solve_fibers_hits_target() {
        let mut seen = Vec::new();
        solve_fibers(&[2, 3, 6], &[-72, 72], &mut |bs, b| {
            seen.push((bs.to_vec(), b))
        });
        assert!(!seen.is_empty());
        for (bs, b) in seen {
            let n = build_seifert(0, &[2, 3, 6], &bs, b);
            assert_eq!(n.torsion_order_formula().unwrap(), BigInt::from(72));
        }
    }

    #[test]
    fn case_a_examples() {
        let recs = enumerate_case_a(&budget(1, 2, (1, 1), 2)).unwrap();
        assert!(contains(&recs, &sd(2, 0, &[])));
        for r in &recs {
            let Target::Seifert(n) = &r.target else {
                panic!()
            };
            assert!(n.minimal_horizontal().unwrap().chi_minus <= BigInt::from(2));
        }
        assert!(enumerate_case_a(&budget(72, 4, (4, 1), 0))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn case_b_examples() {
        let recs = enumerate_case_b(&budget(72, 1, (1, 1), 0)).unwrap();
        assert!(contains(&recs, &sd(0, 1, &[(2, 1), (3, 1), (6, 1)])));

        let n237 = sd(0, 1, &[(2, 1), (3, 1), (7, 1)]);
        assert!(!contains(
            &enumerate_case_b(&budget(1, 1, (1, 4000), 0)).unwrap(),
            &n237
        ));
        // torsion 83 must divide T
        assert!(contains(
            &enumerate_case_b(&budget(83, 1, (1, 3486), 0)).unwrap(),
            &n237
        ));
        assert!(!contains(
            &enumerate_case_b(&budget(83, 1, (1, 3487), 0)).unwrap(),
            &n237
        ));
    }

    #[test]
    fn case_c_traces() {
        let c = SearchCutoffs::from_budget(&budget(1, 1, (1, 1), 0)).unwrap();
        assert_eq!(c.traces, [3]);
        let c = SearchCutoffs::from_budget(&budget(5, 1, (1, 1), 0)).unwrap();
        assert_eq!(c.traces, [-3, 3, 7]);
        let recs = enumerate_case_c(&budget(1, 1, (1, 1), 0), None).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].case, CaseTag::C);
    }

    #[test]
    fn all_minimal_budget() {
        // Nil targets carry no SV check, so the Heisenberg manifold survives
        // next to the trace-3 bundle.
        let census = enumerate_all(&budget(1, 1, (1, 4000), 0), None).unwrap();
        let cases: Vec<CaseTag> = census.records.iter().map(|r| r.case).collect();
        assert_eq!(cases, [CaseTag::B, CaseTag::C]);
        assert_eq!(census.records[0].target, Target::Seifert(sd(1, 1, &[])));
        let Target::Bundle(a) = &census.records[1].target else {
            panic!()
        };
        assert_eq!(a.trace(), BigInt::from(3));
    }
}
