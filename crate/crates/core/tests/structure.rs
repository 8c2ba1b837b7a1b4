use cyclohedra::arith::{binomial, divisors, gcd};
use cyclohedra::census::{gamma_closed, gamma_reduction};
use cyclohedra::dihedral::{isotropy_of_nested, lift_nested};
use cyclohedra::nested::cyclohedron_face_count;
use cyclohedra::{census_bruteforce, cycle_graph, f_vector, DihedralGroup, NestedSet, TubeSystem};
use num_bigint::BigUint;

#[test]
fn orbit_stabilizer_and_isotropy_divisibility() {
    for m in 3..=9 {
        let grp = DihedralGroup::new(m).unwrap();
        let g = cycle_graph(m).unwrap();
        let sys = TubeSystem::new(&g);
        sys.for_each(None, |t| {
            let n = NestedSet::from_tubes_unchecked(t.to_vec());
            let iso = grp.isotropy(&n);
            assert_eq!(grp.orbit(&n).len() * iso.order(), 2 * m, "{n}");
            if !n.is_empty() {
                let d = iso.cyclic_order;
                let kappa = g.component_count(n.union());
                assert_eq!(n.len() % d, 0);
                assert_eq!(kappa % d, 0, "{n}");
            }
        });
    }
}

#[test]
fn face_counts_closed_form_against_enumeration() {
    for m in 3..=11 {
        let f = f_vector(&cycle_graph(m).unwrap());
        for (k, &c) in f.counts.iter().enumerate() {
            assert_eq!(BigUint::from(c), cyclohedron_face_count(m - 1, k).unwrap(), "m={m} k={k}");
        }
    }
}

#[test]
fn census_invariants() {
    for m in 3..=10 {
        let table = census_bruteforce(m, 12).unwrap();
        let n = m as i64 - 1;
        for k in 1..m {
            let total: u64 = divisors(k).iter().map(|&d| table.entry(d, k).gamma).sum();
            assert_eq!(BigUint::from(total), binomial(n, k as i64) * binomial(n + k as i64, k as i64));
            for d in 1..=m {
                let e = table.entry(d, k);
                assert_eq!(e.gamma, e.alpha + e.beta);
                if k % d != 0 || m % d != 0 || d + k > m {
                    assert_eq!(e.gamma, 0, "m={m} d={d} k={k}");
                }
                assert_eq!(BigUint::from(e.gamma), gamma_closed(m, d, k), "m={m} d={d} k={k}");
                let beta_by_a: u64 = (0..=k).map(|a| table.beta_a(d, k, a)).sum();
                assert_eq!(beta_by_a, e.beta);
            }
        }
    }
}

#[test]
fn gamma_by_reduction_agrees() {
    for m in 3..=12 {
        for k in 1..m {
            for d in divisors(gcd(m, k)) {
                if m > 10 && d == 1 {
                    continue;
                }
                assert_eq!(gamma_reduction(m, d, k, 12).unwrap(), gamma_closed(m, d, k), "m={m} d={d} k={k}");
            }
        }
    }
}

#[test]
fn lifting_multiplies_cyclic_order() {
    for ell in 3..=4 {
        let g = cycle_graph(ell).unwrap();
        let sys = TubeSystem::new(&g);
        sys.for_each(None, |t| {
            if t.is_empty() {
                return;
            }
            let n0 = NestedSet::from_tubes_unchecked(t.to_vec());
            let base = isotropy_of_nested(&n0, ell).unwrap();
            for p in 2..=3 {
                let lifted = lift_nested(p, &n0, ell).unwrap();
                let iso = isotropy_of_nested(&lifted, p * ell).unwrap();
                assert_eq!(lifted.len(), p * n0.len());
                assert_eq!(iso.cyclic_order, p * base.cyclic_order);
                assert_eq!(iso.is_dihedral(), base.is_dihedral());
            }
        });
    }
}
