//! Orientable Seifert fibered spaces over orientable base orbifolds.
//!
//! A space is written `(g, b; a_1, b_1; ...; a_n, b_n)`: `g` is the genus of
//! the base, `b` the section obstruction and `(a_i, b_i)` the invariants of
//! the exceptional fibers. [`SeifertData`] is always in standard form:
//! `a_i > b_i > 0`, `gcd(a_i, b_i) = 1`, fibers sorted lexicographically.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Seifert invariants before normalization. Only `a_i >= 1` is required.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertDataRaw {
    pub genus: u32,
    pub b: BigInt,
    pub fibers: Vec<(BigInt, BigInt)>,
}

impl SeifertDataRaw {
    pub fn new(genus: u32, b: impl Into<BigInt>, fibers: Vec<(BigInt, BigInt)>) -> Self {
        SeifertDataRaw {
            genus,
            b: b.into(),
            fibers,
        }
    }

    pub fn from_ints(genus: u32, b: i64, fibers: &[(i64, i64)]) -> Self {
        SeifertDataRaw {
            genus,
            b: BigInt::from(b),
            fibers: fibers
                .iter()
                .map(|&(a, bi)| (BigInt::from(a), BigInt::from(bi)))
                .collect(),
        }
    }

    /// `e = -b - Σ b_i/a_i`. Panics if some `a_i` is zero.
    pub fn euler_number(&self) -> BigRational {
        euler_of(&self.b, &self.fibers)
    }

    /// `χ = 2 - 2g - Σ (1 - 1/a_i)`. Panics if some `a_i` is zero.
    pub fn orbifold_euler(&self) -> BigRational {
        chi_of(self.genus, &self.fibers)
    }

    /// Bring the data to standard form with identical `e` and `χ`.
    ///
    /// Each `b_i` is reduced into `[0, a_i)` with the quotient pushed into
    /// `b`; fibers left with `b_i = 0` (exactly the `a_i = 1` fibers, given
    /// coprimality) are dropped, and the rest sorted.
    pub fn normalize(&self) -> Result<SeifertData> {
        let mut b = self.b.clone();
        let mut fibers = Vec::with_capacity(self.fibers.len());
        for (a, bi) in &self.fibers {
            if !a.is_positive() {
                return Err(Error::NonPositiveMultiplicity {
                    a: a.clone(),
                    b: bi.clone(),
                });
            }
            if !a.gcd(bi).is_one() {
                return Err(Error::NonCoprimeFiber {
                    a: a.clone(),
                    b: bi.clone(),
                });
            }
            let (q, r) = bi.div_mod_floor(a);
            b += q;
            if !r.is_zero() {
                fibers.push((a.clone(), r));
            }
        }
        fibers.sort();
        Ok(SeifertData {
            genus: self.genus,
            b,
            fibers,
        })
    }
}

fn euler_of(b: &BigInt, fibers: &[(BigInt, BigInt)]) -> BigRational {
    let sum = fibers.iter().fold(BigRational::zero(), |acc, (a, bi)| {
        acc + BigRational::new(bi.clone(), a.clone())
    });
    -BigRational::from_integer(b.clone()) - sum
}

fn chi_of(genus: u32, fibers: &[(BigInt, BigInt)]) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(2) - BigInt::from(2) * BigInt::from(genus));
    fibers.iter().fold(base, |acc, (a, _)| {
        acc - (BigRational::one() - BigRational::new(BigInt::one(), a.clone()))
    })
}

/// Seifert data in standard form. Construct through [`SeifertDataRaw::normalize`]
/// or [`SeifertData::new`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertData {
    genus: u32,
    b: BigInt,
    fibers: Vec<(BigInt, BigInt)>,
}

/// The three Seifert geometries distinguished by the signs of `e` and `χ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeometryClass {
    TildePSL2R,
    Nil,
    H2xE1,
    /// `χ > 0`, or `e = 0` with `χ = 0`.
    OutOfScope,
}

impl GeometryClass {
    pub fn as_str(self) -> &'static str {
        match self {
            GeometryClass::TildePSL2R => "TildePSL2R",
            GeometryClass::Nil => "Nil",
            GeometryClass::H2xE1 => "H2xE1",
            GeometryClass::OutOfScope => "OutOfScope",
        }
    }
}

impl fmt::Display for GeometryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Derived invariants of a Seifert space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSummary {
    pub e: BigRational,
    pub chi: BigRational,
    /// Present exactly when the geometry is `TildePSL2R`.
    pub sv: Option<BigRational>,
    /// `|Tor H_1|` from the closed form; present exactly when `e != 0`.
    pub torsion_order: Option<BigInt>,
    pub geometry: GeometryClass,
}

/// The minimal-genus horizontal surface of a space with `e = 0`, `χ < 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HorizontalSurfaceData {
    /// Algebraic intersection with a regular fiber (degree of the branched
    /// cover onto the base orbifold).
    pub d: BigInt,
    /// `χ_-(F) = d·|χ|`, always an integer.
    pub chi_minus: BigInt,
}

impl SeifertData {
    /// Normalizing constructor.
    pub fn new(genus: u32, b: impl Into<BigInt>, fibers: Vec<(BigInt, BigInt)>) -> Result<Self> {
        SeifertDataRaw::new(genus, b, fibers).normalize()
    }

    pub fn from_ints(genus: u32, b: i64, fibers: &[(i64, i64)]) -> Result<Self> {
        SeifertDataRaw::from_ints(genus, b, fibers).normalize()
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn fibers(&self) -> &[(BigInt, BigInt)] {
        &self.fibers
    }

    /// Number of exceptional fibers.
    pub fn n(&self) -> usize {
        self.fibers.len()
    }

    pub fn to_raw(&self) -> SeifertDataRaw {
        SeifertDataRaw {
            genus: self.genus,
            b: self.b.clone(),
            fibers: self.fibers.clone(),
        }
    }

    pub fn euler_number(&self) -> BigRational {
        euler_of(&self.b, &self.fibers)
    }

    pub fn orbifold_euler(&self) -> BigRational {
        chi_of(self.genus, &self.fibers)
    }

    pub fn classify_geometry(&self) -> GeometryClass {
        classify(&self.euler_number(), &self.orbifold_euler())
    }

    /// `∏ a_i` (1 for no exceptional fibers).
    pub fn multiplicity_product(&self) -> BigInt {
        self.fibers.iter().map(|(a, _)| a).product()
    }

    /// `lcm(a_i)` (1 for no exceptional fibers).
    pub fn multiplicity_lcm(&self) -> BigInt {
        self.fibers
            .iter()
            .fold(BigInt::one(), |acc, (a, _)| acc.lcm(a))
    }

    /// `|Tor H_1(N; Z)| = |e · ∏ a_i|`, valid only for `e != 0`.
    pub fn torsion_order_formula(&self) -> Result<BigInt> {
        let e = self.euler_number();
        if e.is_zero() {
            return Err(Error::ZeroEulerNumber);
        }
        let scaled = e * BigRational::from_integer(self.multiplicity_product());
        debug_assert!(scaled.is_integer());
        Ok(scaled.to_integer().abs())
    }

    /// Seifert volume `|χ² / e|` of a `TildePSL2R` space.
    pub fn sv_volume(&self) -> Result<BigRational> {
        let e = self.euler_number();
        let chi = self.orbifold_euler();
        match classify(&e, &chi) {
            GeometryClass::TildePSL2R => Ok((&chi * &chi / e).abs()),
            other => Err(Error::NotTildePsl2r(other.as_str())),
        }
    }

    /// Minimal horizontal surface: a horizontal surface branches over the
    /// i-th cone point with index `a_i`, so its fiber degree is a multiple
    /// of every `a_i`; with `e = 0` the degree `lcm(a_i)` is realized.
    pub fn minimal_horizontal(&self) -> Result<HorizontalSurfaceData> {
        let e = self.euler_number();
        if !e.is_zero() {
            return Err(Error::NoHorizontalSurface("e != 0"));
        }
        let chi = self.orbifold_euler();
        if !chi.is_negative() {
            return Err(Error::NoHorizontalSurface("chi >= 0"));
        }
        let d = self.multiplicity_lcm();
        let chi_minus = BigRational::from_integer(d.clone()) * chi.abs();
        debug_assert!(chi_minus.is_integer());
        Ok(HorizontalSurfaceData {
            d,
            chi_minus: chi_minus.to_integer(),
        })
    }

    /// `2g + n - 2`, a lower bound for the rank of `π_1`. May be negative.
    pub fn rank_lower_bound(&self) -> i64 {
        2 * i64::from(self.genus) + self.fibers.len() as i64 - 2
    }

    /// The same manifold with the opposite orientation:
    /// `(g, -b - n; (a_i, a_i - b_i))`.
    pub fn reverse_orientation(&self) -> SeifertData {
        let n = BigInt::from(self.fibers.len());
        let mut fibers: Vec<_> = self
            .fibers
            .iter()
            .map(|(a, bi)| (a.clone(), a - bi))
            .collect();
        fibers.sort();
        SeifertData {
            genus: self.genus,
            b: -&self.b - n,
            fibers,
        }
    }

    /// Orientation-independent representative used as the census key: the
    /// orientation with `e < 0`, or for `e = 0` the smaller of the two.
    pub fn canonical_orientation(&self) -> SeifertData {
        let e = self.euler_number();
        let rev = self.reverse_orientation();
        if e.is_negative() {
            self.clone()
        } else if e.is_positive() {
            rev
        } else {
            std::cmp::min(self.clone(), rev)
        }
    }

    /// True if `other` presents the same unoriented manifold.
    pub fn same_manifold(&self, other: &SeifertData) -> bool {
        self == other || *self == other.reverse_orientation()
    }

    pub fn summary(&self) -> InvariantSummary {
        let e = self.euler_number();
        let chi = self.orbifold_euler();
        let geometry = classify(&e, &chi);
        let sv = (geometry == GeometryClass::TildePSL2R).then(|| (&chi * &chi / &e).abs());
        let torsion_order = (!e.is_zero()).then(|| {
            (&e * BigRational::from_integer(self.multiplicity_product()))
                .to_integer()
                .abs()
        });
        InvariantSummary {
            e,
            chi,
            sv,
            torsion_order,
            geometry,
        }
    }
}

impl Ord for SeifertData {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.genus, self.fibers.len(), &self.fibers, &self.b).cmp(&(
            other.genus,
            other.fibers.len(),
            &other.fibers,
            &other.b,
        ))
    }
}

impl PartialOrd for SeifertData {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}", self.genus, self.b)?;
        for (a, b) in &self.fibers {
            write!(f, "; {a}, {b}")?;
        }
        f.write_str(")")
    }
}

fn classify(e: &BigRational, chi: &BigRational) -> GeometryClass {
    match (e.is_zero(), chi.cmp(&BigRational::zero())) {
        (false, Ordering::Less) => GeometryClass::TildePSL2R,
        (false, Ordering::Equal) => GeometryClass::Nil,
        (true, Ordering::Less) => GeometryClass::H2xE1,
        _ => GeometryClass::OutOfScope,
    }
}

/// A closed orientable base orbifold with `χ = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlatBase {
    pub genus: u32,
    /// Cone point orders, non-decreasing.
    pub cone_orders: Vec<u32>,
}

/// All solutions of `2 - 2g - Σ (1 - 1/a_i) = 0` with `a_i >= 2`.
///
/// Every cone term lies in `[1/2, 1)`, so `g <= 1`, `g = 1` admits no cone
/// points and `g = 0` at most four. Orders are placed in non-decreasing
/// order; to close a remainder `r` at least `floor(r) + 1` more terms are
/// needed, each at least as large as the current one, which caps the order.
pub fn enumerate_flat_bases() -> Vec<FlatBase> {
    fn extend(
        remaining: &BigRational,
        slots: u32,
        min: u32,
        acc: &mut Vec<u32>,
        out: &mut Vec<FlatBase>,
    ) {
        if remaining.is_zero() {
            out.push(FlatBase {
                genus: 0,
                cone_orders: acc.clone(),
            });
            return;
        }
        if *remaining >= BigRational::from_integer(BigInt::from(slots)) {
            return;
        }
        let needed = BigRational::from_integer(remaining.floor().to_integer() + 1);
        let mut a = min;
        loop {
            let term = BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(a));
            if &needed * &term > *remaining {
                break;
            }
            acc.push(a);
            extend(&(remaining - &term), slots - 1, a, acc, out);
            acc.pop();
            a += 1;
        }
    }

    let mut out = vec![FlatBase {
        genus: 1,
        cone_orders: Vec::new(),
    }];
    let mut acc = Vec::new();
    extend(
        &BigRational::from_integer(BigInt::from(2)),
        4,
        2,
        &mut acc,
        &mut out,
    );
    out.sort_by(|x, y| {
        (x.cone_orders.len(), &x.cone_orders).cmp(&(y.cone_orders.len(), &y.cone_orders))
    });
    out
}
