use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use pfaflab::exact_poly::ExactPolynomial;
use pfaflab::pfaffian_core::pfaffian_full;
use pfaflab::schur_q::*;
use proptest::prelude::*;

/// Every filling of the cells with `1' < 1 < … < k' < k` (code `c`: letter
/// `c/2 + 1`, primed when `c` is even), checked against the row and column
/// rules, summed as `x^wt`.
fn brute_force_q(shape: &SkewShiftedShape, k: usize) -> ExactPolynomial {
    let cells = shape.cells();
    let mut filling: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut out = ExactPolynomial::zero();
    fn rec(
        cells: &[(usize, usize)],
        idx: usize,
        k: usize,
        filling: &mut BTreeMap<(usize, usize), usize>,
        out: &mut ExactPolynomial,
    ) {
        if idx == cells.len() {
            let mut term = ExactPolynomial::one();
            for &c in filling.values() {
                term = &term * &ExactPolynomial::indet(c / 2 + 1);
            }
            *out += &term;
            return;
        }
        let (r, col) = cells[idx];
        for c in 0..2 * k {
            let left = filling.get(&(r, col.wrapping_sub(1))).copied();
            let up = filling.get(&(r.wrapping_sub(1), col)).copied();
            if left.is_some_and(|l| l > c) || up.is_some_and(|u| u > c) {
                continue;
            }
            // a primed letter repeats only down a column, an unprimed one only along a row
            if c % 2 == 0 && left == Some(c) || c % 2 == 1 && up == Some(c) {
                continue;
            }
            filling.insert((r, col), c);
            rec(cells, idx + 1, k, filling, out);
            filling.remove(&(r, col));
        }
    }
    rec(&cells, 0, k, &mut filling, &mut out);
    out
}

#[test]
fn tableau_counts_match_the_oracle() {
    for shape in skew_shapes_up_to(6) {
        assert_eq!(schur_q(&shape, 3).unwrap(), brute_force_q(&shape, 3), "{shape}");
    }
    for shape in skew_shapes_up_to(4) {
        assert_eq!(schur_q(&shape, 4).unwrap(), brute_force_q(&shape, 4), "{shape}");
    }
}

#[test]
fn small_values() {
    let q = |s: &str, k| schur_q(&parse_shape(s).unwrap(), k).unwrap().to_string();
    assert_eq!(q("(1)", 1), "2*x[1]");
    assert_eq!(q("(2,1)", 2), "4*x[1]^2*x[2] + 4*x[1]*x[2]^2");
    assert_eq!(q("(2)", 2), "2*x[1]^2 + 4*x[1]*x[2] + 2*x[2]^2");
}

#[test]
fn monomial_positivity_of_jacobi_trudi_pfaffians() {
    for shape in skew_shapes_up_to(5) {
        let a = q_jt_matrix(shape.outer(), shape.inner(), false, 5).unwrap();
        let e = monomial_expand(&pfaffian_full(&a).unwrap(), 5);
        assert!(e.is_nonnegative(), "{shape}");
    }
}

#[test]
fn generator_case_signs() {
    // Pfaf'_(1,2) = -Pfaf'_∅ for n = 2, so the two cannot both be monomial-positive
    let recs = generator_monomial_check(2, 4).unwrap();
    let by = |d: &str| recs.iter().filter(|r| r.diagram == d).collect::<Vec<_>>();
    for (pos, neg) in by("V[]").into_iter().zip(by("V[(1,2)]")) {
        assert_eq!(pos.shape, neg.shape);
        assert!(pos.nonnegative);
        assert!(!neg.nonnegative || neg.coefficients.is_empty());
    }
}

#[test]
fn scan_records_are_deterministic() {
    let a = scan_sort(6).unwrap();
    let b = scan_sort(6).unwrap();
    assert_eq!(a, b);
    let mut buf = Vec::new();
    write_jsonl(&a, &mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap().lines().count(), a.len());
}

fn strict() -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::btree_set(1usize..6, 0..3).prop_map(|s| s.into_iter().rev().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cell_transfer_and_sorting_stay_strict(a in strict(), b in strict()) {
        let (s1, s2) = sort_split(&a, &b).unwrap();
        prop_assert!(is_strict(&s1) && is_strict(&s2));
        let mut all: Vec<usize> = a.iter().chain(&b).copied().collect();
        let mut got: Vec<usize> = s1.iter().chain(&s2).copied().collect();
        all.sort();
        got.sort();
        prop_assert_eq!(all, got);
        let (j, m) = join_meet(&SkewShiftedShape::straight(&a).unwrap(), &SkewShiftedShape::straight(&b).unwrap()).unwrap();
        prop_assert_eq!(j.size() + m.size(), a.iter().sum::<usize>() + b.iter().sum::<usize>());
    }

    #[test]
    fn expansion_recombines(a in strict(), b in strict(), c in -3i64..4) {
        let degree = a.iter().sum::<usize>().max(b.iter().sum::<usize>()).max(1);
        let k = max_strict_length(degree).max(1);
        let q = |p: &[usize]| schur_q(&SkewShiftedShape::straight(p).unwrap(), k).unwrap();
        let mut f = q(&a);
        f.add_scaled(&q(&b), &BigRational::from_integer(BigInt::from(c)));
        let e = expand_in_q_basis(&f, k, degree).unwrap();
        prop_assert!(!e.has_remainder());
        prop_assert_eq!(e.recombine().unwrap(), f);
    }

    #[test]
    fn jacobi_trudi_pfaffian(outer in strict(), cut in 0usize..3) {
        let inner: Vec<usize> = outer.iter().skip(1).map(|&p| p.saturating_sub(cut)).filter(|&p| p > 0).collect();
        if let Ok(shape) = SkewShiftedShape::new(&outer, &inner) {
            let a = q_jt_matrix(shape.outer(), shape.inner(), false, 3).unwrap();
            prop_assert_eq!(pfaffian_full(&a).unwrap(), schur_q(&shape, 3).unwrap());
        }
    }
}
