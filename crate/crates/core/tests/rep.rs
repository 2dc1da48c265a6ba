mod common;

use std::sync::OnceLock;

use common::{auto_field, element, hsiao};
use duorep::ext::hsiao_labels;
use duorep::hsiao::{build_sigma_n, dual_group, HsiaoMonoid};
use duorep::rep::{
    eta_idempotents, gamma_idempotents, label_poset, simple_rep, AlgebraElement, RepTheory,
    SimpleLabel,
};
use duorep::{FiniteMonoid, PrimeField};
use proptest::prelude::*;

fn f3() -> PrimeField {
    PrimeField::new(3).unwrap()
}

fn sum(f: &PrimeField, xs: &[AlgebraElement], size: usize) -> AlgebraElement {
    xs.iter().fold(AlgebraElement::zero(size), |acc, x| acc.add(f, x))
}

fn assert_complete_orthogonal(rep: &RepTheory<'_>, xs: &[AlgebraElement]) {
    let f = rep.field();
    let m = rep.monoid();
    assert_eq!(sum(f, xs, m.size()), rep.one());
    for (i, a) in xs.iter().enumerate() {
        for (j, b) in xs.iter().enumerate() {
            let ab = rep.mul(a, b);
            if i == j {
                assert_eq!(&ab, a);
            } else {
                assert!(ab.is_zero(), "{i} * {j} != 0");
            }
        }
    }
}

#[test]
fn etas() {
    let s2 = build_sigma_n(2).unwrap();
    let eta = eta_idempotents(&s2, &f3()).unwrap();
    let lat = s2.support_lattice().unwrap();
    // element 1 is ({1},{2})
    assert_eq!(eta[lat.bottom()].coefficients(), &[0, 1, 0]);
    assert_eq!(eta[lat.top()].coefficients(), &[1, 2, 0]);

    let z3 = FiniteMonoid::cyclic_group(3).unwrap();
    let eta = eta_idempotents(&z3, &PrimeField::new(7).unwrap()).unwrap();
    assert_eq!(eta.len(), 1);
    assert_eq!(eta[0].coefficients(), &[1, 0, 0]);

    let s3 = build_sigma_n(3).unwrap();
    let rep = RepTheory::new(&s3, f3()).unwrap();
    assert_eq!(rep.etas().len(), 5);
    assert_complete_orthogonal(&rep, rep.etas());
}

#[test]
fn gammas() {
    let z2 = FiniteMonoid::cyclic_group(2).unwrap();
    let g = gamma_idempotents(&z2, f3()).unwrap();
    let coeffs: Vec<&[u32]> = g.iter().map(|(_, x)| x.coefficients()).collect();
    assert_eq!(coeffs, vec![&[2, 2][..], &[2, 1][..]]);

    let s2 = build_sigma_n(2).unwrap();
    let g = gamma_idempotents(&s2, f3()).unwrap();
    let lat = s2.support_lattice().unwrap();
    for (label, gamma) in &g {
        if label.apex == lat.bottom() {
            assert_eq!(gamma.coefficients(), &[0, 1, 0]);
        } else {
            assert_eq!(gamma.coefficients(), &[1, 2, 0]);
        }
    }

    let h = hsiao(2, "2");
    let rep = RepTheory::new(h.monoid(), f3()).unwrap();
    assert_eq!(rep.gammas().len(), 6);
    assert_complete_orthogonal(&rep, rep.gammas());

    // characteristic dividing a fiber order is refused
    assert!(gamma_idempotents(h.monoid(), PrimeField::new(2).unwrap()).is_err());
}

#[test]
fn simple_functionals() {
    let h = hsiao(2, "2");
    let m = h.monoid();
    let rep = RepTheory::new(m, f3()).unwrap();
    let lat = rep.lattice();
    let bottom = lat.bottom();
    let sub = rep.subgroup(bottom);
    let g1 = element(&h, &[&[1], &[2]], &[1, 0]);
    let g2 = element(&h, &[&[1], &[2]], &[0, 1]);
    let chi = rep
        .characters(bottom)
        .iter()
        .position(|c| c[sub.position(g1).unwrap()] == 2 && c[sub.position(g2).unwrap()] == 1)
        .unwrap();
    let label = SimpleLabel {
        apex: bottom,
        character: chi,
    };
    assert_eq!(simple_rep(m, label, f3()).unwrap()[g1], 2);

    let top_trivial = SimpleLabel {
        apex: lat.top(),
        character: 0,
    };
    let lambda = simple_rep(m, top_trivial, f3()).unwrap();
    for unit in [element(&h, &[&[1, 2]], &[0]), element(&h, &[&[1, 2]], &[1])] {
        assert_eq!(lambda[unit], 1);
    }
    for x in m.elements().filter(|&x| lat.sigma(x) != lat.top()) {
        assert_eq!(lambda[x], 0);
    }
}

#[test]
fn label_posets() {
    let h = hsiao(2, "2");
    let (labels, poset) = label_poset(h.monoid(), f3()).unwrap();
    let lat = h.monoid().support_lattice().unwrap();
    let bottoms: Vec<usize> = (0..labels.len()).filter(|&i| labels[i].apex == lat.bottom()).collect();
    assert_eq!(bottoms.len(), 4);
    assert_eq!(labels.len(), 6);
    for &b in &bottoms {
        let above = (0..labels.len()).filter(|&t| t != b && poset.leq(b, t)).count();
        assert_eq!(above, 1);
    }

    let s2 = build_sigma_n(2).unwrap();
    let (labels, poset) = label_poset(&s2, f3()).unwrap();
    assert_eq!(labels.len(), 2);
    assert_eq!(poset.cover_pairs().len(), 1);

    let h = hsiao(3, "2");
    let (labels, _) = label_poset(h.monoid(), f3()).unwrap();
    assert_eq!(labels.len(), 22);
}

fn instances() -> &'static [HsiaoMonoid] {
    static CELL: OnceLock<Vec<HsiaoMonoid>> = OnceLock::new();
    CELL.get_or_init(|| {
        vec![
            hsiao(3, "1"),
            hsiao(2, "2"),
            hsiao(2, "3"),
            hsiao(2, "4"),
            hsiao(2, "2x2"),
            hsiao(3, "2"),
        ]
    })
}

/// `λ_{(X,f)}(m) = Π_Q f_Q(g_Q)` when every block `Q` of `X` lies inside a
/// block of `m`, with `g_Q` the label of `m` on `Q`; else 0.
fn hsiao_lambda(h: &HsiaoMonoid, f: &PrimeField, blocks: &[Vec<usize>], chars: &[Vec<u64>], m: usize) -> u32 {
    let group = h.group();
    let dual = dual_group(group, f).unwrap();
    let pi = h.partition_of(m);
    let labels = h.labels_of(m);
    let mut value = 1;
    for (q, k) in blocks.iter().zip(chars) {
        let inside = pi.blocks().iter().any(|b| q.iter().all(|x| b.contains(x)));
        if !inside {
            return 0;
        }
        value = f.mul(value, dual[group.index(k)].value(labels[q[0] - 1]));
    }
    value
}

#[test]
fn simple_functionals_match_hsiao_formula() {
    for h in instances() {
        let f = auto_field(h);
        let rep = RepTheory::new(h.monoid(), f).unwrap();
        let labels = hsiao_labels(h, &rep).unwrap();
        for (l, hl) in labels.iter().enumerate() {
            for m in h.monoid().elements() {
                assert_eq!(
                    rep.simple_values(l)[m],
                    hsiao_lambda(h, &f, &hl.blocks, &hl.characters, m)
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gammas_are_complete_orthogonal_primitive(i in 0usize..5) {
        let h = &instances()[i];
        let rep = RepTheory::new(h.monoid(), auto_field(h)).unwrap();
        assert_complete_orthogonal(&rep, rep.gammas());
        for (l, g) in rep.gammas().iter().enumerate() {
            prop_assert_eq!(g, rep.gamma_simplified(l));
            for k in 0..rep.label_count() {
                let v = g.evaluate(rep.field(), rep.simple_values(k));
                prop_assert_eq!(v, u32::from(k == l));
            }
        }
    }

    #[test]
    fn simple_functionals_are_multiplicative(i in 0usize..6, a in any::<usize>(), b in any::<usize>()) {
        let h = &instances()[i];
        let m = h.monoid();
        let f = auto_field(h);
        let rep = RepTheory::new(m, f).unwrap();
        let (a, b) = (a % m.size(), b % m.size());
        for l in 0..rep.label_count() {
            let lambda = rep.simple_values(l);
            prop_assert_eq!(lambda[m.mul(a, b)], f.mul(lambda[a], lambda[b]));
            prop_assert_eq!(lambda[m.identity()], 1);
        }
    }

    #[test]
    fn label_order_is_graded_by_lattice_rank(i in 0usize..6) {
        let h = &instances()[i];
        let rep = RepTheory::new(h.monoid(), auto_field(h)).unwrap();
        let poset = rep.label_poset();
        for (a, b) in poset.cover_pairs() {
            prop_assert_eq!(rep.rank_distance(a, b), Some(1));
        }
        // every label lies below exactly one label at the top
        let top = rep.lattice().top();
        for a in 0..rep.label_count() {
            let tops = (0..rep.label_count())
                .filter(|&b| rep.labels()[b].apex == top && poset.leq(a, b))
                .count();
            prop_assert_eq!(tops, 1);
        }
    }
}
