mod common;

use std::sync::OnceLock;

use common::{element, hsiao, osp};
use duorep::hsiao::{build_sigma_n, HsiaoMonoid};
use duorep::{Error, FiniteMonoid};
use proptest::prelude::*;

fn right_zero_with_identity() -> FiniteMonoid {
    // 0 = identity, then a, b with xy = y
    FiniteMonoid::new(3, vec![0, 1, 2, 1, 1, 2, 2, 1, 2], 0).unwrap()
}

#[test]
fn axioms_of_small_examples() {
    let s2 = build_sigma_n(2).unwrap();
    let r = s2.check_axioms();
    assert!(r.right_semicentral && r.left_duo && r.regular && r.lrb_of_groups && r.band);

    let z2 = FiniteMonoid::cyclic_group(2).unwrap();
    let r = z2.check_axioms();
    assert!(r.right_semicentral && r.left_duo && r.regular && r.lrb_of_groups);
    assert!(!r.band);

    let r = right_zero_with_identity().check_axioms();
    assert!(!r.left_duo);
    assert!(!r.lrb_of_groups);
}

#[test]
fn omega_powers_and_daggers() {
    let z5 = FiniteMonoid::cyclic_group(5).unwrap();
    for g in 0..5 {
        assert_eq!(z5.omega_power(g), 0);
        assert_eq!(z5.mul(g, z5.dagger(g).unwrap()), 0);
    }
    let s3 = build_sigma_n(3).unwrap();
    for &e in s3.idempotents() {
        assert_eq!(s3.omega_power(e), e);
        assert_eq!(s3.dagger(e).unwrap(), e);
    }

    let h = hsiao(2, "2");
    let m = element(&h, &[&[1], &[2]], &[1, 1]);
    let e = element(&h, &[&[1], &[2]], &[0, 0]);
    assert_eq!(h.monoid().omega_power(m), e);

    let h = hsiao(2, "3");
    let m = element(&h, &[&[1], &[2]], &[1, 2]);
    let inv = element(&h, &[&[1], &[2]], &[2, 1]);
    assert_eq!(h.monoid().dagger(m).unwrap(), inv);
}

#[test]
fn support_lattices() {
    let s2 = build_sigma_n(2).unwrap();
    let lat = s2.support_lattice().unwrap();
    assert_eq!(lat.len(), 2);
    assert!(lat.leq(lat.bottom(), lat.top()));
    for m in 1..3 {
        assert_eq!(lat.sigma(m), lat.bottom());
    }
    assert_eq!(lat.sigma(s2.identity()), lat.top());

    let z4 = FiniteMonoid::cyclic_group(4).unwrap();
    assert_eq!(z4.support_lattice().unwrap().len(), 1);

    // Λ(Σ_3) ≅ Π_3: bottom, three atoms, top
    let s3 = build_sigma_n(3).unwrap();
    let lat = s3.support_lattice().unwrap();
    assert_eq!(lat.len(), 5);
    assert_eq!(lat.height(), 2);
    let atoms: Vec<usize> = lat
        .nodes()
        .filter(|&x| x != lat.bottom() && x != lat.top())
        .collect();
    assert_eq!(atoms.len(), 3);
    for &a in &atoms {
        for &b in &atoms {
            if a != b {
                assert_eq!(lat.meet(a, b), lat.bottom());
                assert!(!lat.leq(a, b));
            }
        }
    }
}

#[test]
fn contractions() {
    let s3 = build_sigma_n(3).unwrap();
    let lat = s3.support_lattice().unwrap();
    let top = s3.contraction(lat.top()).unwrap();
    assert_eq!(top.embedding, vec![s3.identity()]);
    assert_eq!(s3.contraction(lat.bottom()).unwrap().monoid.size(), 13);

    let h = hsiao(3, "1");
    let a = element(&h, &[&[1, 2], &[3]], &[0, 0]);
    let b = element(&h, &[&[3], &[1, 2]], &[0, 0]);
    let c = s3.contraction(lat.sigma(a)).unwrap();
    let mut expected = vec![s3.identity(), a, b];
    expected.sort_unstable();
    assert_eq!(c.embedding, expected);
    assert!(c.monoid.check_axioms().band);

    // units of Σ_3^{Z/2} form Z/2
    let h = hsiao(3, "2");
    let m = h.monoid();
    let lat = m.support_lattice().unwrap();
    assert_eq!(m.contraction(lat.top()).unwrap().monoid.size(), 2);
}

#[test]
fn maximal_subgroups() {
    let z3 = FiniteMonoid::cyclic_group(3).unwrap();
    assert_eq!(z3.maximal_subgroup(0).unwrap().members, vec![0, 1, 2]);

    let h = hsiao(2, "2");
    let e = element(&h, &[&[1], &[2]], &[0, 0]);
    let g = h.monoid().maximal_subgroup(e).unwrap();
    assert_eq!(g.order(), 4);
    for &x in &g.members {
        assert_eq!(h.partition_of(x), &osp(2, &[&[1], &[2]]));
    }
    assert!(g.is_abelian(h.monoid()));

    let s4 = build_sigma_n(4).unwrap();
    assert_eq!(s4.maximal_subgroup(s4.identity()).unwrap().order(), 1);
    assert!(matches!(
        build_sigma_n(2).unwrap().maximal_subgroup(99),
        Err(Error::NotIdempotent(99))
    ));
}

#[test]
fn conjugation_examples() {
    let h = hsiao(2, "2");
    let m = h.monoid();
    let e = element(&h, &[&[1], &[2]], &[0, 0]);
    let unit = element(&h, &[&[1, 2]], &[1]);
    assert_eq!(m.conjugate_idempotent(m.identity(), e).unwrap(), e);
    assert_eq!(m.conjugate_idempotent(unit, e).unwrap(), e);
    // LRB of groups: m e m† = m^ω e
    for x in m.elements() {
        for &f in m.idempotents() {
            assert_eq!(
                m.conjugate_idempotent(x, f).unwrap(),
                m.mul(m.omega_power(x), f)
            );
        }
    }
    assert!(matches!(
        right_zero_with_identity().conjugate_idempotent(1, 1),
        Err(Error::NotRegularLeftDuo)
    ));
}

#[test]
fn green_relations_match_ideals() {
    let h = hsiao(2, "2");
    let m = h.monoid();
    let green = m.green();
    let right = |x: usize| {
        let mut v: Vec<usize> = m.elements().map(|y| m.mul(x, y)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    for a in m.elements() {
        for b in m.elements() {
            assert_eq!(green.r_equivalent(a, b), right(a) == right(b));
        }
    }
    // every L-class of a regular J-class holds an idempotent
    for a in m.elements() {
        if green.regular_j.contains(&green.j_class[a]) {
            assert!(m.idempotents().iter().any(|&e| green.l_equivalent(a, e)));
        }
    }
}

#[test]
fn table_errors() {
    assert!(matches!(
        FiniteMonoid::new(2, vec![0, 1, 1, 1], 1),
        Err(Error::BadIdentity(1))
    ));
    assert!(matches!(
        FiniteMonoid::new(2, vec![0, 1, 1, 1, 0], 0),
        Err(Error::MalformedTable(_))
    ));
    assert!(matches!(
        FiniteMonoid::parse_table("2 0\n0 1\n"),
        Err(Error::MalformedTable(_))
    ));
    let table = "3 0\n0 1 2\n1 2 0\n2 0 1\n";
    let z3 = FiniteMonoid::parse_table(table).unwrap();
    assert_eq!(z3.to_table_string(), table);
    // 3-element non-associative magma with identity 0
    let bad = "3 0\n0 1 2\n1 0 0\n2 1 0\n";
    assert!(matches!(
        FiniteMonoid::parse_table(bad),
        Err(Error::NotAssociative(..))
    ));
}

fn instances() -> &'static [HsiaoMonoid] {
    static CELL: OnceLock<Vec<HsiaoMonoid>> = OnceLock::new();
    CELL.get_or_init(|| {
        vec![
            hsiao(3, "1"),
            hsiao(4, "1"),
            hsiao(2, "2"),
            hsiao(2, "3"),
            hsiao(3, "2"),
            hsiao(2, "2x2"),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sigma_is_a_homomorphism(i in 0usize..6, a in any::<usize>(), b in any::<usize>()) {
        let m = instances()[i].monoid();
        let (a, b) = (a % m.size(), b % m.size());
        let lat = m.support_lattice().unwrap();
        prop_assert_eq!(lat.sigma(m.mul(a, b)), lat.meet(lat.sigma(a), lat.sigma(b)));
    }

    #[test]
    fn meet_laws(i in 0usize..6, x in any::<usize>(), y in any::<usize>(), z in any::<usize>()) {
        let lat = instances()[i].monoid().support_lattice().unwrap();
        let n = lat.len();
        let (x, y, z) = (x % n, y % n, z % n);
        prop_assert_eq!(lat.meet(x, y), lat.meet(y, x));
        prop_assert_eq!(lat.meet(x, x), x);
        prop_assert_eq!(lat.meet(lat.meet(x, y), z), lat.meet(x, lat.meet(y, z)));
        prop_assert_eq!(lat.leq(x, y), lat.meet(x, y) == x);
        prop_assert_eq!(lat.sigma(lat.representative(x)), x);
    }

    #[test]
    fn omega_is_multiplicative(i in 0usize..6, a in any::<usize>(), b in any::<usize>()) {
        let m = instances()[i].monoid();
        let (a, b) = (a % m.size(), b % m.size());
        prop_assert_eq!(m.omega_power(m.mul(a, b)), m.mul(m.omega_power(a), m.omega_power(b)));
        let e = m.omega_power(a);
        prop_assert_eq!(m.mul(e, e), e);
    }

    #[test]
    fn right_semicentral_consequences(i in 0usize..6, a in any::<usize>(), b in any::<usize>()) {
        let m = instances()[i].monoid();
        let ids = m.idempotents();
        let (e, f) = (ids[a % ids.len()], ids[b % ids.len()]);
        let ef = m.mul(e, f);
        prop_assert_eq!(m.mul(ef, e), ef);
        // Me ∩ Mf = Mef
        let left = |x: usize| m.elements().map(|y| m.mul(y, x)).collect::<std::collections::BTreeSet<_>>();
        let meet: std::collections::BTreeSet<_> = left(e).intersection(&left(f)).copied().collect();
        prop_assert_eq!(meet, left(ef));
        // eM = fM forces e = f
        let right = |x: usize| m.elements().map(|y| m.mul(x, y)).collect::<std::collections::BTreeSet<_>>();
        if right(e) == right(f) {
            prop_assert_eq!(e, f);
        }
    }

    #[test]
    fn conjugation_matches_right_ideals(i in 0usize..6, a in any::<usize>(), b in any::<usize>()) {
        let m = instances()[i].monoid();
        let x = a % m.size();
        let e = m.idempotents()[b % m.idempotents().len()];
        let right = |x: usize| m.elements().map(|y| m.mul(x, y)).collect::<std::collections::BTreeSet<_>>();
        let c = m.conjugate_idempotent(x, e).unwrap();
        prop_assert!(m.is_idempotent(c));
        prop_assert_eq!(right(c), right(m.mul(x, e)));
    }

    #[test]
    fn table_round_trip(i in 0usize..4) {
        let m = instances()[i].monoid();
        let back = FiniteMonoid::parse_table(&m.to_table_string()).unwrap();
        prop_assert_eq!(back.table(), m.table());
        prop_assert_eq!(back.identity(), m.identity());
    }
}
