use std::collections::HashMap;

use super::{Bitset, FiniteMonoid};

/// Green's relations R, L, J as class ids per element.
#[derive(Debug, Clone)]
pub struct GreenStructure {
    pub r_class: Vec<usize>,
    pub l_class: Vec<usize>,
    pub j_class: Vec<usize>,
    /// J-class ids that contain an idempotent.
    pub regular_j: Vec<usize>,
    /// `j_order[a][b]` iff `MJ_aM ⊆ MJ_bM`.
    pub j_order: Vec<Vec<bool>>,
}

fn classify(ideals: &[Bitset]) -> (Vec<usize>, Vec<Bitset>) {
    let mut ids: HashMap<&Bitset, usize> = HashMap::new();
    let mut reps = Vec::new();
    let class = ideals
        .iter()
        .map(|b| {
            *ids.entry(b).or_insert_with(|| {
                reps.push(b.clone());
                reps.len() - 1
            })
        })
        .collect();
    (class, reps)
}

impl GreenStructure {
    pub(super) fn compute(m: &FiniteMonoid) -> Self {
        let right: Vec<Bitset> = m.elements().map(|x| m.right_ideal(x)).collect();
        let left: Vec<Bitset> = m.elements().map(|x| m.left_ideal(x)).collect();
        let two_sided: Vec<Bitset> = m
            .elements()
            .map(|x| {
                let mut acc = Bitset::new(m.size());
                for y in m.elements().filter(|&y| right[x].get(y)) {
                    acc.union_with(&left[y]);
                }
                acc
            })
            .collect();
        let (r_class, _) = classify(&right);
        let (l_class, _) = classify(&left);
        let (j_class, j_ideals) = classify(&two_sided);
        let mut regular_j: Vec<usize> = m.idempotents().iter().map(|&e| j_class[e]).collect();
        regular_j.sort_unstable();
        regular_j.dedup();
        let j_order = j_ideals
            .iter()
            .map(|a| j_ideals.iter().map(|b| a.is_subset(b)).collect())
            .collect();
        GreenStructure {
            r_class,
            l_class,
            j_class,
            regular_j,
            j_order,
        }
    }

    pub fn r_equivalent(&self, a: usize, b: usize) -> bool {
        self.r_class[a] == self.r_class[b]
    }

    pub fn l_equivalent(&self, a: usize, b: usize) -> bool {
        self.l_class[a] == self.l_class[b]
    }

    pub fn j_equivalent(&self, a: usize, b: usize) -> bool {
        self.j_class[a] == self.j_class[b]
    }
}
