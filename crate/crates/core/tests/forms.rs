use std::collections::BTreeSet;

use coxeter_core::invariants::{
    coxeter_numbers, coxeter_polynomial, coxeter_polynomial_table, cycle_type_from_cox_poly,
    cycle_type_of_form, enumerate_coxeter_polynomials, spectral_multiplicity,
};
use coxeter_core::linalg::{char_poly, Matrix, Permutation};
use coxeter_core::quiver::{
    connected_quivers, coxeter_matrix_of_quiver, cycle_type_of_quiver, incidence_matrix,
    inverse_quiver, triangular_gram, Labeling,
};
use coxeter_core::realize::{
    canonical_extension_quiver, realize_backtracking, realize_by_basis_change,
    representative_quivers, weak_congruence_to_canonical,
};
use coxeter_core::unitform::{check_strong_congruence, form_of_quiver};
use coxeter_core::{Int, IntForm, Partition, Quiver, UnitForm};
use num_bigint::BigUint;
use proptest::prelude::*;

type M = Matrix<i64>;
type F = UnitForm<i64>;

fn quivers(max_m: usize, max_n: usize) -> Vec<Quiver> {
    let mut out = Vec::new();
    for m in 2..=max_m {
        for n in m - 1..=max_n {
            out.extend(connected_quivers(m, n, Labeling::FirstAppearance));
        }
    }
    out
}

/// Partitions of `m`, parts non-increasing, by plain recursion.
fn partitions(m: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

/// Dense coefficients of `(v - 1)^e prod (v^p - 1)`, constant term first.
fn expanded(parts: &[usize], e: i64) -> Vec<i64> {
    let mul = |a: &[i64], b: &[i64]| {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    let mut p = vec![1];
    for &k in parts {
        let mut f = vec![0; k + 1];
        f[0] = -1;
        f[k] = 1;
        p = mul(&p, &f);
    }
    if e >= 0 {
        for _ in 0..e {
            p = mul(&p, &[-1, 1]);
        }
    } else {
        // synthetic division by v - 1
        let mut q = vec![0; p.len() - 1];
        let mut carry = 0;
        for i in (1..p.len()).rev() {
            carry += p[i];
            q[i - 1] = carry;
        }
        assert_eq!(carry + p[0], 0, "not divisible by v - 1");
        p = q;
    }
    p
}

#[test]
fn quiver_form_evaluates_to_half_the_incidence_norm() {
    let grid = [-2i64, -1, 0, 1, 3];
    for q in quivers(4, 5) {
        let f = form_of_quiver::<i64>(&q);
        let inc = incidence_matrix::<i64>(&q);
        let n = q.arrow_count();
        for seed in 0..grid.len().pow(2) {
            let x: Vec<i64> = (0..n).map(|i| grid[(seed + i * i) % grid.len()]).collect();
            let ix = inc.mul_vec(&x).unwrap();
            let norm: i64 = ix.iter().map(|v| v * v).sum();
            assert_eq!(2 * f.evaluate(&x).unwrap(), norm, "{q:?} at {x:?}");
        }
    }
}

#[test]
fn form_and_quiver_coxeter_matrices_agree() {
    for q in quivers(5, 6) {
        let f = form_of_quiver::<i64>(&q);
        assert_eq!(
            f.coxeter_matrix(),
            coxeter_matrix_of_quiver::<i64>(&q).unwrap()
        );
        assert_eq!(f.corank(), q.arrow_count() + 1 - q.vertex_count());
        assert!(f.is_non_negative() && f.is_connected());
        assert!(check_strong_congruence(
            &f,
            &f,
            &M::identity(q.arrow_count())
        ));
    }
}

#[test]
fn both_realizations_reproduce_the_form() {
    for q in quivers(4, 6) {
        let f = form_of_quiver::<i64>(&q);
        let ct = cycle_type_of_quiver(&q).unwrap();
        for res in [
            realize_by_basis_change(&f).unwrap(),
            realize_backtracking(&f).unwrap(),
        ] {
            assert_eq!(form_of_quiver::<i64>(&res.quiver), f, "{q:?}");
            assert_eq!(cycle_type_of_quiver(&res.quiver).unwrap(), ct, "{q:?}");
        }
        let b = weak_congruence_to_canonical(&f).unwrap();
        let can = canonical_extension_quiver(f.rank(), f.corank()).unwrap();
        let g_can = form_of_quiver::<i64>(&can).symmetric_gram();
        let lhs = b
            .transpose()
            .mul(&f.symmetric_gram())
            .unwrap()
            .mul(&b)
            .unwrap();
        assert_eq!(lhs, g_can, "{q:?}");
    }
}

#[test]
fn big_integer_path_agrees() {
    for q in quivers(4, 5) {
        let small = form_of_quiver::<i64>(&q);
        let big: IntForm = form_of_quiver::<Int>(&q);
        assert_eq!(
            cycle_type_of_form(&small).unwrap(),
            cycle_type_of_form(&big).unwrap()
        );
        let expanded_big = coxeter_polynomial(&big).unwrap().expand::<Int>();
        assert_eq!(expanded_big, char_poly(&big.coxeter_matrix()).unwrap());
    }
}

#[test]
fn strongly_congruent_forms_share_the_cycle_type() {
    // signed permutations that happen to be strong congruences
    let mut hits = 0;
    for q in quivers(4, 4) {
        let f = form_of_quiver::<i64>(&q);
        let n = f.n();
        let ct = cycle_type_of_form(&f).unwrap();
        // Phi G Phi^T = G
        let phi_t = f.coxeter_matrix().transpose();
        assert!(check_strong_congruence(&f, &f, &phi_t));
        for p in all_permutations(n) {
            for signs in 0..1u32 << n {
                let b = M::from_fn(n, n, |i, j| {
                    if p.image(j + 1) == i + 1 {
                        if signs >> j & 1 == 1 {
                            -1
                        } else {
                            1
                        }
                    } else {
                        0
                    }
                });
                let upper = b.transpose().mul(f.upper()).unwrap().mul(&b).unwrap();
                let Ok(g) = F::new(upper) else { continue };
                if check_strong_congruence(&f, &g, &b) {
                    hits += 1;
                    assert_eq!(cycle_type_of_form(&g).unwrap(), ct, "{q:?} under {b:?}");
                }
            }
        }
    }
    assert!(hits > 0);
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if rest.is_empty() {
            out.push(Permutation::from_images(cur.clone()).unwrap());
            return;
        }
        for k in 0..rest.len() {
            let v = rest.remove(k);
            cur.push(v);
            go(rest, cur, out);
            cur.pop();
            rest.insert(k, v);
        }
    }
    let mut out = Vec::new();
    go(&mut (1..=n).collect(), &mut Vec::new(), &mut out);
    out
}

#[test]
fn representatives_have_their_cycle_type_and_are_mutually_inverse() {
    for m in 2..=6 {
        for parts in partitions(m) {
            let pi = Partition::new(parts).unwrap();
            for d in 0..=2 {
                let reps = representative_quivers(&pi, d).unwrap();
                let n = m + pi.len() + 2 * d - 2;
                assert_eq!(reps.linear.vertex_count(), m);
                assert_eq!(reps.linear.arrow_count(), n);
                assert_eq!(cycle_type_of_quiver(&reps.linear).unwrap(), pi);
                assert_eq!(
                    inverse_quiver(&reps.linear).unwrap(),
                    reps.star,
                    "{pi}, d = {d}"
                );
                assert_eq!(inverse_quiver(&reps.star).unwrap(), reps.linear);
                let f = form_of_quiver::<i64>(&reps.linear);
                assert_eq!(f.corank(), pi.len() - 1 + 2 * d);
                assert_eq!(cycle_type_of_form(&f).unwrap(), pi);
            }
        }
    }
}

#[test]
fn canonical_extension_has_the_requested_rank_and_corank() {
    for r in 1..=6 {
        for c in 0..=4 {
            let q = canonical_extension_quiver(r, c).unwrap();
            assert_eq!((q.vertex_count(), q.arrow_count()), (r + 1, r + c));
            let f = form_of_quiver::<i64>(&q);
            assert_eq!((f.rank(), f.corank()), (r, c));
        }
    }
}

#[test]
fn coxeter_table_matches_an_independent_enumeration() {
    for n in 1..=10 {
        for c in 0..n {
            let m = n - c + 1;
            let admissible: Vec<Vec<usize>> = partitions(m)
                .into_iter()
                .filter(|p| p.len() <= c + 1 && (c + 1 - p.len()) % 2 == 0)
                .collect();
            let rows = coxeter_polynomial_table(n, c).unwrap();
            assert_eq!(rows.len(), admissible.len(), "n = {n}, c = {c}");
            let got: BTreeSet<Vec<usize>> =
                rows.iter().map(|r| r.cycle_type.parts().to_vec()).collect();
            assert_eq!(
                got,
                admissible.iter().cloned().collect(),
                "n = {n}, c = {c}"
            );
            for row in &rows {
                let parts = row.cycle_type.parts();
                let dense: Vec<i64> = row.polynomial.expand::<i64>().coeffs().to_vec();
                assert_eq!(dense, expanded(parts, c as i64 - 1));
                let lcm = parts.iter().fold(1usize, |a, &b| num_integer::lcm(a, b));
                assert_eq!(row.numbers.reduced_coxeter_number, BigUint::from(lcm));
                let finite = (parts.len() == 1).then(|| BigUint::from(parts[0]));
                assert_eq!(row.numbers.coxeter_number, finite);
                let back = cycle_type_from_cox_poly(&row.polynomial.expand::<i64>(), c).unwrap();
                assert_eq!(back, row.cycle_type);
            }
            assert_eq!(
                enumerate_coxeter_polynomials(n, c).unwrap().len(),
                rows.len()
            );
        }
    }
}

#[test]
fn forms_outside_type_a_are_rejected_as_input_errors() {
    // D4: one variable meeting three others
    let d4 = F::from_upper_entries(4, &[(1, 2, -1), (1, 3, -1), (1, 4, -1)]).unwrap();
    let err = coxeter_polynomial(&d4).unwrap_err();
    assert!(!err.is_internal(), "{err}");
    // indefinite
    let bad = F::from_upper_entries(2, &[(1, 2, -3)]).unwrap();
    assert!(!cycle_type_of_form(&bad).unwrap_err().is_internal());
    // disconnected
    let split = F::new(M::identity(2)).unwrap();
    assert!(!cycle_type_of_form(&split).unwrap_err().is_internal());
}

#[test]
fn kronecker_invariants() {
    let q = Quiver::new(2, vec![(1, 2), (1, 2)]).unwrap();
    let f = form_of_quiver::<i64>(&q);
    assert_eq!(cycle_type_of_form(&f).unwrap().parts(), &[1, 1]);
    let numbers = coxeter_numbers(&f).unwrap();
    assert_eq!(numbers.coxeter_number, None);
    assert_eq!(numbers.reduced_coxeter_number, BigUint::from(1u32));
    assert_eq!(spectral_multiplicity(&f, 1).unwrap(), 2);
    assert_eq!(
        triangular_gram::<i64>(&q),
        M::from_i64_rows(&[[1, 2], [0, 1]])
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn table_polynomials_round_trip(n in 1usize..=12, c_seed in 0usize..12) {
        let c = c_seed % n;
        for poly in enumerate_coxeter_polynomials(n, c).unwrap() {
            let pi = cycle_type_from_cox_poly(&poly.expand::<Int>(), c).unwrap();
            prop_assert_eq!(pi.total(), n - c + 1);
            prop_assert!(pi.fits_corank(c));
        }
    }

    #[test]
    fn cycle_type_is_invariant_under_reordering_vertices(
        m in 2usize..=6,
        extra in 0usize..=2,
        rot in 0usize..6,
    ) {
        let pi = Partition::new(vec![m]).unwrap();
        let q = representative_quivers(&pi, extra).unwrap().linear;
        let images: Vec<usize> = (0..m).map(|v| (v + rot) % m + 1).collect();
        let rho = Permutation::from_images(images).unwrap();
        let moved = coxeter_core::quiver::relabel_vertices(&q, &rho).unwrap();
        prop_assert_eq!(form_of_quiver::<i64>(&moved), form_of_quiver::<i64>(&q));
        prop_assert_eq!(cycle_type_of_quiver(&moved).unwrap(), pi);
    }
}
