//! Torus bundles over the circle with Anosov monodromy (Sol manifolds).
//!
//! The bundle with monodromy `A ∈ SL(2,Z)` depends only on the conjugacy
//! class of `A`. Classes of bounded trace are finite: conjugating by the
//! elementary matrices drives `|a|` below the trace bound, after which all
//! entries are at most `2k² + 1`. Class membership is decided by flooding
//! the conjugation graph (generators `L^±1`, `U^±1`) inside an entry cap,
//! doubling the cap until the partition stops changing.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// How many cap doublings to try before reporting an unstable partition.
const MAX_DOUBLINGS: usize = 8;

/// Largest `k` whose working caps keep every BFS entry and product in `i64`.
pub const MAX_TRACE_BOUND: i64 = 1 << 14;

/// A 2×2 integer matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2 {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Self {
        Mat2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    /// `[[1, 0], [s, 1]]`
    pub fn lower(s: i64) -> Self {
        Mat2::new(1, 0, s, 1)
    }

    /// `[[1, s], [0, 1]]`
    pub fn upper(s: i64) -> Self {
        Mat2::new(1, s, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    /// Inverse of a determinant-one matrix (the adjugate).
    pub fn inverse_sl2(&self) -> Mat2 {
        debug_assert!(self.det().is_one());
        Mat2 {
            a: self.d.clone(),
            b: -&self.b,
            c: -&self.c,
            d: self.a.clone(),
        }
    }

    /// `self · m · self⁻¹`, for `self ∈ SL(2,Z)`.
    pub fn conjugate(&self, m: &Mat2) -> Mat2 {
        self.mul(m).mul(&self.inverse_sl2())
    }

    pub fn max_abs_entry(&self) -> BigInt {
        [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_default()
    }

    pub fn to_rows(&self) -> [[BigInt; 2]; 2] {
        [
            [self.a.clone(), self.b.clone()],
            [self.c.clone(), self.d.clone()],
        ]
    }

    fn to_state(&self) -> Option<State> {
        Some([
            self.a.to_i64()?,
            self.b.to_i64()?,
            self.c.to_i64()?,
            self.d.to_i64()?,
        ])
    }

    fn from_state(s: State) -> Mat2 {
        Mat2::new(s[0], s[1], s[2], s[3])
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// An element of SL(2,Z) with `|trace| > 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnosovMatrix(Mat2);

impl AnosovMatrix {
    /// Checks `det = 1`, then `|trace| > 2`.
    pub fn validate(m: Mat2) -> Result<Self> {
        let det = m.det();
        if !det.is_one() {
            return Err(Error::Determinant(det));
        }
        let tr = m.trace().abs();
        if tr <= BigInt::from(2) {
            return Err(Error::NotAnosov(tr));
        }
        debug_assert!(!m.b.is_zero() && !m.c.is_zero());
        Ok(AnosovMatrix(m))
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::validate(Mat2::new(a, b, c, d))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn into_matrix(self) -> Mat2 {
        self.0
    }

    pub fn trace(&self) -> BigInt {
        self.0.trace()
    }

    /// `|Tor H_1| = |det(I - A)| = |2 - trace|`.
    pub fn bundle_torsion_order(&self) -> BigInt {
        (BigInt::from(2) - self.trace()).abs()
    }

    fn from_state_unchecked(s: State) -> Self {
        let m = Mat2::from_state(s);
        debug_assert!(Self::validate(m.clone()).is_ok());
        AnosovMatrix(m)
    }
}

impl fmt::Display for AnosovMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Validate four integers `[[a, b], [c, d]]` as an Anosov monodromy.
pub fn validate_anosov(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<AnosovMatrix> {
    AnosovMatrix::validate(Mat2 { a, b, c, d })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveKind {
    /// Conjugation by `[[1, 0], [s, 1]]`; top-left becomes `a - s·b`.
    Lower,
    /// Conjugation by `[[1, s], [0, 1]]`; top-left becomes `a + s·c`.
    Upper,
}

/// One step of the trace-bounded reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionMove {
    pub kind: MoveKind,
    pub sign: i64,
    /// Top-left entry after the move.
    pub top_left: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub representative: AnosovMatrix,
    /// `conjugator · input · conjugator⁻¹ = representative`.
    pub conjugator: Mat2,
    pub moves: Vec<ReductionMove>,
}

impl ReductionCertificate {
    pub fn verifies(&self, input: &AnosovMatrix) -> bool {
        self.conjugator.det().is_one()
            && self.conjugator.conjugate(input.matrix()) == *self.representative.matrix()
    }
}

/// Conjugate `A` until every entry is at most `2k² + 1` in absolute value.
///
/// While `|a| > k`: `|d| < 2|a|`, hence `|bc| <= 2a²`, so `b² <= 2a²` or
/// `c² <= 2a²`. An elementary conjugation then replaces `a` by
/// `±(|a| - |b|)` (resp. `|c|`), which is strictly smaller in absolute
/// value. The `b` move is preferred when both apply. Once `|a| <= k`,
/// `|d| <= 2k` and `|bc| <= 2k² + 1` bound the rest.
pub fn reduce_trace_bounded(m: &AnosovMatrix, k: &BigInt) -> Result<ReductionCertificate> {
    if !k.is_positive() {
        return Err(Error::InvalidBound(format!("k must be positive, got {k}")));
    }
    let tr = m.trace();
    if tr.abs() > *k {
        return Err(Error::TraceExceedsBound {
            trace: tr.abs(),
            k: k.clone(),
        });
    }
    let mut cur = m.matrix().clone();
    let mut conj = Mat2::identity();
    let mut moves = Vec::new();
    while cur.a.abs() > *k {
        let a2 = &cur.a * &cur.a * 2;
        let (kind, sign, step) = if &cur.b * &cur.b <= a2 {
            let s = sign_of(&(&cur.a * &cur.b));
            (MoveKind::Lower, s, Mat2::lower(s))
        } else {
            debug_assert!(&cur.c * &cur.c <= a2);
            let s = -sign_of(&(&cur.a * &cur.c));
            (MoveKind::Upper, s, Mat2::upper(s))
        };
        let next = step.conjugate(&cur);
        assert!(next.a.abs() < cur.a.abs(), "reduction must shrink |a|");
        conj = step.mul(&conj);
        moves.push(ReductionMove {
            kind,
            sign,
            top_left: next.a.clone(),
        });
        cur = next;
    }
    Ok(ReductionCertificate {
        representative: AnosovMatrix(cur),
        conjugator: conj,
        moves,
    })
}

fn sign_of(x: &BigInt) -> i64 {
    if x.is_negative() {
        -1
    } else {
        1
    }
}

/// `2k² + 1`, the entry bound for reduced representatives.
pub fn entry_bound(k: i64) -> i64 {
    2 * k * k + 1
}

type State = [i64; 4];

/// The four generators as (upper?, sign).
const GENERATORS: [(bool, i64); 4] = [(false, 1), (false, -1), (true, 1), (true, -1)];

fn conjugate_state(m: &State, upper: bool, s: i64) -> State {
    let [a, b, c, d] = *m;
    if upper {
        [a + s * c, b + s * d - s * a - c, c, d - s * c]
    } else {
        [a - s * b, b, c + s * a - s * d - b, d + s * b]
    }
}

fn within(m: &State, cap: i64) -> bool {
    m.iter().all(|x| x.abs() <= cap)
}

fn generator_matrix(upper: bool, s: i64) -> Mat2 {
    if upper {
        Mat2::upper(s)
    } else {
        Mat2::lower(s)
    }
}

/// Label every base state with the lexicographically least base state in
/// its connected component of the capped conjugation graph.
fn label_components(base: &[State], cap: i64) -> Vec<State> {
    let index: HashMap<State, usize> = base.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut labels: Vec<Option<State>> = vec![None; base.len()];
    let mut seen: HashSet<State> = HashSet::new();
    let mut queue = VecDeque::new();
    for start in 0..base.len() {
        if labels[start].is_some() {
            continue;
        }
        let mut members = Vec::new();
        seen.insert(base[start]);
        queue.push_back(base[start]);
        while let Some(s) = queue.pop_front() {
            if let Some(&i) = index.get(&s) {
                members.push(i);
            }
            for (upper, sign) in GENERATORS {
                let n = conjugate_state(&s, upper, sign);
                if within(&n, cap) && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        let rep = members
            .iter()
            .map(|&i| base[i])
            .min()
            .expect("start is a member");
        for i in members {
            labels[i] = Some(rep);
        }
    }
    labels
        .into_iter()
        .map(|l| l.expect("every state labelled"))
        .collect()
}

/// Result of partitioning a finite set of Anosov matrices into classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    /// Cap of the base box; also the first working cap unless overridden.
    pub base_cap: i64,
    /// Working caps tried, in order.
    pub caps: Vec<i64>,
    /// Smallest tried cap from which the partition never changed.
    pub stable_cap: i64,
    /// Whether the first cap already gave the final partition. `false` is a
    /// diagnostic: the first cap split some class.
    pub initial_cap_stable: bool,
    pub classes: Vec<ConjugacyClass>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Least member of the class within the base set, ordered by `(a, b, c, d)`.
    pub representative: AnosovMatrix,
    pub trace: i64,
    /// Number of base-set members in the class.
    pub members: usize,
}

/// Partition `base` at increasing caps until two consecutive doublings
/// leave it unchanged.
fn stable_partition(base: &[State], base_cap: i64, first_cap: i64) -> Result<ClassPartition> {
    let mut cap = first_cap;
    let mut caps = vec![cap];
    let first = label_components(base, cap);
    let mut labels = first.clone();
    let mut stable_cap = cap;
    let mut unchanged = 0;
    while unchanged < 2 {
        if caps.len() > MAX_DOUBLINGS {
            return Err(Error::Unstable { caps });
        }
        cap = cap
            .checked_mul(2)
            .filter(|c| *c <= entry_bound(MAX_TRACE_BOUND) * 16)
            .ok_or_else(|| Error::SearchTooLarge(format!("working cap beyond {cap}")))?;
        caps.push(cap);
        let next = label_components(base, cap);
        if next == labels {
            unchanged += 1;
        } else {
            unchanged = 0;
            stable_cap = cap;
            labels = next;
        }
    }

    let mut counts: HashMap<State, usize> = HashMap::new();
    for l in &labels {
        *counts.entry(*l).or_default() += 1;
    }
    let mut classes: Vec<ConjugacyClass> = counts
        .into_iter()
        .map(|(rep, members)| ConjugacyClass {
            trace: rep[0] + rep[3],
            representative: AnosovMatrix::from_state_unchecked(rep),
            members,
        })
        .collect();
    classes.sort_by(|x, y| (x.trace, &x.representative).cmp(&(y.trace, &y.representative)));
    Ok(ClassPartition {
        base_cap,
        initial_cap_stable: labels == first,
        caps,
        stable_cap,
        classes,
    })
}

/// All `(b, c)` with `b·c = n`, `|b|, |c| <= cap`. `n != 0`.
fn factor_pairs(n: i64, cap: i64, out: &mut Vec<(i64, i64)>) {
    let m = n.unsigned_abs();
    let mut p: u64 = 1;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let q = m / p;
            for (x, y) in [(p, q), (q, p)] {
                if x as i64 <= cap && y as i64 <= cap {
                    let (x, y) = (x as i64, y as i64);
                    let y = if n < 0 { -y } else { y };
                    out.push((x, y));
                    out.push((-x, -y));
                }
                if p == q {
                    break;
                }
            }
        }
        p += 1;
    }
}

/// Anosov matrices of trace `t` with `|a| <= a_bound` and entries `<= cap`.
fn anosov_states(t: i64, a_bound: i64, cap: i64) -> Vec<State> {
    let mut out = Vec::new();
    let mut pairs = Vec::new();
    for a in -a_bound..=a_bound {
        let d = t - a;
        if d.abs() > cap {
            continue;
        }
        let n = a * d - 1;
        if n == 0 {
            continue;
        }
        pairs.clear();
        factor_pairs(n, cap, &mut pairs);
        out.extend(pairs.iter().map(|&(b, c)| [a, b, c, d]));
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn check_k(k: i64) -> Result<()> {
    if !(3..=MAX_TRACE_BOUND).contains(&k) {
        return Err(Error::InvalidBound(format!(
            "trace bound must lie in 3..={MAX_TRACE_BOUND}, got {k}"
        )));
    }
    Ok(())
}

/// Conjugacy classes of Anosov matrices with `|trace| <= k`.
///
/// The base set is every Anosov matrix with `|trace| <= k` and entries at
/// most `2k² + 1`; it meets every class. `cap` overrides the first working
/// cap (it is never taken below the base cap).
pub fn conjugacy_classes_bounded(k: i64, cap: Option<i64>) -> Result<ClassPartition> {
    check_k(k)?;
    let base_cap = entry_bound(k);
    let base: Vec<State> = (3..=k)
        .flat_map(|t| [-t, t])
        .flat_map(|t| anosov_states(t, base_cap, base_cap))
        .collect();
    stable_partition(&base, base_cap, cap.unwrap_or(base_cap).max(base_cap))
}

/// Conjugacy classes of trace exactly `t`, represented inside the reduced
/// box `|a| <= |t|` (which the reduction lands in, so it meets every class).
pub fn trace_classes(t: i64, cap: Option<i64>) -> Result<Arc<ClassPartition>> {
    type Cache = Mutex<HashMap<(i64, i64), Arc<ClassPartition>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let k = t.abs();
    check_k(k)?;
    let base_cap = entry_bound(k);
    let first = cap.unwrap_or(base_cap).max(base_cap);
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache poisoned").get(&(t, first)) {
        return Ok(Arc::clone(hit));
    }
    let base = anosov_states(t, k, base_cap);
    let part = Arc::new(stable_partition(&base, base_cap, first)?);
    cache
        .lock()
        .expect("cache poisoned")
        .insert((t, first), Arc::clone(&part));
    Ok(part)
}

/// Outcome of [`same_bundle`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conjugacy {
    /// `conjugator · A · conjugator⁻¹ = B`.
    Conjugate {
        conjugator: Mat2,
    },
    TraceDiffers,
    /// Not connected in the capped graph, stable over two doublings.
    NotConjugate {
        cap: i64,
    },
}

impl Conjugacy {
    pub fn is_conjugate(&self) -> bool {
        matches!(self, Conjugacy::Conjugate { .. })
    }
}

/// Decide whether the bundles of `a` and `b` are homeomorphic, i.e. whether
/// the monodromies are conjugate in SL(2,Z), returning a witness if so.
pub fn same_bundle(a: &AnosovMatrix, b: &AnosovMatrix, cap: Option<i64>) -> Result<Conjugacy> {
    if a.trace() != b.trace() {
        return Ok(Conjugacy::TraceDiffers);
    }
    let k_big = a.trace().abs();
    let k = k_big
        .to_i64()
        .filter(|k| *k <= MAX_TRACE_BOUND)
        .ok_or_else(|| Error::SearchTooLarge(format!("|trace| = {k_big}")))?;
    let ra = reduce_trace_bounded(a, &k_big)?;
    let rb = reduce_trace_bounded(b, &k_big)?;
    let start = ra
        .representative
        .matrix()
        .to_state()
        .expect("reduced entries fit");
    let goal = rb
        .representative
        .matrix()
        .to_state()
        .expect("reduced entries fit");

    let mut cap = cap.unwrap_or(entry_bound(k)).max(entry_bound(k));
    let mut previous: Option<Vec<State>> = None;
    let mut unchanged = 0;
    let mut caps = Vec::new();
    loop {
        caps.push(cap);
        let (path, reached) = search(start, goal, cap, k);
        if let Some(path) = path {
            let p = path.iter().fold(Mat2::identity(), |acc, &(upper, s)| {
                generator_matrix(upper, s).mul(&acc)
            });
            let x = rb.conjugator.inverse_sl2().mul(&p).mul(&ra.conjugator);
            assert_eq!(
                x.conjugate(a.matrix()),
                *b.matrix(),
                "conjugacy witness failed"
            );
            return Ok(Conjugacy::Conjugate { conjugator: x });
        }
        if previous.as_ref() == Some(&reached) {
            unchanged += 1;
            if unchanged == 2 {
                return Ok(Conjugacy::NotConjugate { cap });
            }
        } else {
            unchanged = 0;
        }
        previous = Some(reached);
        if caps.len() > MAX_DOUBLINGS {
            return Err(Error::Unstable { caps });
        }
        cap *= 2;
    }
}

/// BFS from `start` inside `cap`. Returns the generator word reaching
/// `goal` if any, and the sorted reduced-box states (`|a| <= k`) reached.
fn search(start: State, goal: State, cap: i64, k: i64) -> (Option<Vec<(bool, i64)>>, Vec<State>) {
    let mut parent: HashMap<State, Option<(State, bool, i64)>> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert(start, None);
    queue.push_back(start);
    while let Some(s) = queue.pop_front() {
        if s == goal {
            let mut word = Vec::new();
            let mut cur = s;
            while let Some(Some((prev, upper, sign))) = parent.get(&cur).cloned() {
                word.push((upper, sign));
                cur = prev;
            }
            word.reverse();
            return (Some(word), Vec::new());
        }
        for (upper, sign) in GENERATORS {
            let n = conjugate_state(&s, upper, sign);
            if within(&n, cap) && !parent.contains_key(&n) {
                parent.insert(n, Some((s, upper, sign)));
                queue.push_back(n);
            }
        }
    }
    let mut reached: Vec<State> = parent.into_keys().filter(|s| s[0].abs() <= k).collect();
    reached.sort_unstable();
    (None, reached)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn validation_examples() {
        let cat = AnosovMatrix::from_ints(2, 1, 1, 1).unwrap();
        assert_eq!(cat.trace(), big(3));
        assert_eq!(
            AnosovMatrix::from_ints(1, 1, 0, 1),
            Err(Error::NotAnosov(big(2)))
        );
        assert_eq!(
            AnosovMatrix::from_ints(2, 1, 1, 2),
            Err(Error::Determinant(big(3)))
        );
        assert_eq!(
            AnosovMatrix::from_ints(-1, 0, 0, -1),
            Err(Error::NotAnosov(big(2)))
        );
    }

    #[test]
    fn torsion_examples() {
        assert_eq!(
            AnosovMatrix::from_ints(2, 1, 1, 1)
                .unwrap()
                .bundle_torsion_order(),
            big(1)
        );
        assert_eq!(
            AnosovMatrix::from_ints(3, 2, 1, 1)
                .unwrap()
                .bundle_torsion_order(),
            big(2)
        );
        assert_eq!(
            AnosovMatrix::from_ints(-2, 1, 1, -1)
                .unwrap()
                .bundle_torsion_order(),
            big(5)
        );
    }

    #[test]
    fn state_conjugation_matches_matrix_conjugation() {
        let m = [7, -3, 12, -5];
        for (upper, s) in GENERATORS {
            let expected = generator_matrix(upper, s).conjugate(&Mat2::from_state(m));
            assert_eq!(Mat2::from_state(conjugate_state(&m, upper, s)), expected);
        }
    }

    #[test]
    fn reduction_is_noop_when_already_small() {
        let a = AnosovMatrix::from_ints(2, 1, 1, 1).unwrap();
        let cert = reduce_trace_bounded(&a, &big(3)).unwrap();
        assert_eq!(cert.representative, a);
        assert_eq!(cert.conjugator, Mat2::identity());
        assert!(cert.moves.is_empty());
    }

    #[test]
    fn reduction_of_shifted_cat_map() {
        let a = AnosovMatrix::from_ints(2, 1, 1, 1).unwrap();
        let c = Mat2::upper(5);
        let shifted = AnosovMatrix::validate(c.conjugate(a.matrix())).unwrap();
        let cert = reduce_trace_bounded(&shifted, &big(3)).unwrap();
        assert!(cert.verifies(&shifted));
        assert!(cert.representative.matrix().max_abs_entry() <= big(19));
        let mut last = shifted.matrix().a.abs();
        for mv in &cert.moves {
            assert!(mv.top_left.abs() < last);
            last = mv.top_left.abs();
        }
    }

    #[test]
    fn reduction_rejects_large_trace() {
        let a = AnosovMatrix::from_ints(5, 2, 2, 1).unwrap();
        assert!(matches!(
            reduce_trace_bounded(&a, &big(3)),
            Err(Error::TraceExceedsBound { .. })
        ));
    }

    #[test]
    fn trace_three_classes() {
        let part = conjugacy_classes_bounded(3, None).unwrap();
        let traces: Vec<i64> = part.classes.iter().map(|c| c.trace).collect();
        assert!(traces.iter().all(|t| t.abs() == 3));
        assert_eq!(traces.iter().filter(|&&t| t == 3).count(), 1);
        assert_eq!(traces.iter().filter(|&&t| t == -3).count(), 1);
        for c in &part.classes {
            assert!(c.representative.trace().abs() <= big(3));
        }
        assert_eq!(part, conjugacy_classes_bounded(3, None).unwrap());
    }

    #[test]
    fn cat_map_and_its_transpose_are_conjugate() {
        let a = AnosovMatrix::from_ints(2, 1, 1, 1).unwrap();
        let b = AnosovMatrix::from_ints(1, 1, 1, 2).unwrap();
        match same_bundle(&a, &b, None).unwrap() {
            Conjugacy::Conjugate { conjugator } => {
                assert_eq!(conjugator.conjugate(a.matrix()), *b.matrix());
            }
            other => panic!("expected conjugate, got {other:?}"),
        }
    }

    #[test]
    fn same_bundle_basics() {
        let a = AnosovMatrix::from_ints(2, 1, 1, 1).unwrap();
        assert_eq!(
            same_bundle(&a, &a, None).unwrap(),
            Conjugacy::Conjugate {
                conjugator: Mat2::identity()
            }
        );
        let b = AnosovMatrix::from_ints(3, 1, 2, 1).unwrap();
        assert_eq!(same_bundle(&a, &b, None).unwrap(), Conjugacy::TraceDiffers);
    }

    #[test]
    fn distinct_classes_of_same_trace() {
        // trace 6: [[1,1],[4,5]] and [[1,2],[2,5]] give forms of discriminant
        // 32 with different content (1 vs 2), so they cannot be conjugate.
        let a = AnosovMatrix::from_ints(1, 1, 4, 5).unwrap();
        let b = AnosovMatrix::from_ints(1, 2, 2, 5).unwrap();
        assert!(matches!(
            same_bundle(&a, &b, None).unwrap(),
            Conjugacy::NotConjugate { .. }
        ));
    }
}
