//! Independent recomputations of census and surface data.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use sfcensus::homology::{h1_seifert, presentation_matrix_seifert};
use sfcensus::{
    check_necessary_conditions, enumerate_all, enumerate_case_a, DominationBudget, GeometryClass,
    SeifertData, Target,
};

fn coprime_fibers(max_a: i64, n: usize) -> Vec<Vec<(i64, i64)>> {
    let singles: Vec<(i64, i64)> = (2..=max_a)
        .flat_map(|a| (1..a).filter(move |b| b.gcd(&a) == 1).map(move |b| (a, b)))
        .collect();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<(i64, i64)>| {
                let last = prefix.last().copied();
                singles
                    .iter()
                    .filter(|f| last.is_none_or(|l| l <= **f))
                    .map(|f| {
                        let mut p = prefix.clone();
                        p.push(*f);
                        p
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

/// Smallest `d > 0` admitting `φ: H_1 → Z` with `φ(h) = d`, by trying each
/// `d` and solving the relations one unknown at a time.
fn brute_horizontal_degree(n: &SeifertData, limit: i64) -> Option<i64> {
    let m = presentation_matrix_seifert(n);
    let h = m.cols() - 1;
    'degree: for d in 1..=limit {
        let mut phi: Vec<Option<BigInt>> = vec![None; m.cols()];
        phi[h] = Some(BigInt::from(d));
        for x in phi.iter_mut().take(2 * n.genus() as usize) {
            *x = Some(BigInt::zero());
        }
        for r in 0..m.rows() {
            let unknown: Vec<usize> = (0..m.cols())
                .filter(|&c| !m[(r, c)].is_zero() && phi[c].is_none())
                .collect();
            let known: BigInt = (0..m.cols())
                .filter_map(|c| phi[c].as_ref().map(|v| &m[(r, c)] * v))
                .sum();
            match unknown.as_slice() {
                [] if known.is_zero() => {}
                [c] if known.is_multiple_of(&m[(r, *c)]) => phi[*c] = Some(-known / &m[(r, *c)]),
                _ => continue 'degree,
            }
        }
        return Some(d);
    }
    None
}

#[test]
fn minimal_horizontal_degree_matches_brute_force() {
    let mut checked = 0;
    for genus in 0..=2u32 {
        for n in 0..=4 {
            for fibers in coprime_fibers(8, n) {
                // e = 0 fixes b
                let s: BigRational = fibers
                    .iter()
                    .map(|&(a, b)| BigRational::new(b.into(), a.into()))
                    .sum();
                if !s.is_integer() {
                    continue;
                }
                let b = -s.to_integer().to_i64().unwrap();
                let m = SeifertData::from_ints(genus, b, &fibers).unwrap();
                if m.classify_geometry() != GeometryClass::H2xE1 {
                    continue;
                }
                let h = m.minimal_horizontal().unwrap();
                let d = brute_horizontal_degree(&m, 2000).expect("some degree exists");
                assert_eq!(h.d, BigInt::from(d), "{m}");
                let chi = m.orbifold_euler() * BigRational::from_integer(BigInt::from(d));
                assert_eq!(BigRational::from_integer(-h.chi_minus.clone()), chi, "{m}");
                checked += 1;
            }
        }
    }
    assert!(checked > 100, "only {checked} cases");
}

#[test]
fn census_records_pass_and_respect_cutoffs() {
    for (t, r, v, l) in [(1, 1, (1, 1), 0), (12, 2, (2, 1), 2), (72, 3, (1, 2), 1)] {
        let budget = DominationBudget::from_ints(t, r, v.0, v.1, l).unwrap();
        let census = enumerate_all(&budget, None).unwrap();
        let c = &census.cutoffs;
        for rec in &census.records {
            let verdict = check_necessary_conditions(&budget, &rec.target);
            assert!(verdict.passed, "{}", rec.target);
            assert_eq!(verdict.torsion, rec.torsion);
            assert!(c.torsion_divisors.contains(&rec.torsion));
            match &rec.target {
                Target::Seifert(n) => {
                    assert!(n.genus() <= c.max_genus);
                    assert!(n.n() <= c.max_fibers);
                    assert_eq!(*n, n.canonical_orientation());
                    match n.classify_geometry() {
                        GeometryClass::TildePSL2R => {
                            assert!(n.multiplicity_product() <= c.product_cap)
                        }
                        GeometryClass::H2xE1 => assert!(n.multiplicity_lcm() <= c.lcm_cap),
                        _ => {}
                    }
                }
                Target::Bundle(a) => {
                    let tr = a.trace().to_i64().unwrap();
                    assert!(c.traces.contains(&tr));
                }
            }
        }
    }
}

#[test]
fn census_torsion_uses_homology_when_e_vanishes() {
    let budget = DominationBudget::from_ints(64, 2, 0, 1, 3).unwrap();
    let recs = enumerate_case_a(&budget).unwrap();
    assert!(!recs.is_empty());
    for rec in recs {
        let Target::Seifert(n) = &rec.target else {
            unreachable!()
        };
        assert!(n.euler_number().is_zero());
        assert_eq!(rec.torsion, h1_seifert(n).torsion_order());
        assert!(BigInt::from(64).is_multiple_of(&rec.torsion));
        assert!(!rec.torsion.is_negative());
    }
}
