#![allow(dead_code)]

use duorep::hsiao::{build_hsiao, splitting_prime, FiniteAbelianGroup, HsiaoMonoid, OrderedSetPartition};
use duorep::PrimeField;

pub fn group(text: &str) -> FiniteAbelianGroup {
    FiniteAbelianGroup::parse(text).unwrap()
}

pub fn hsiao(n: usize, g: &str) -> HsiaoMonoid {
    build_hsiao(n, &group(g)).unwrap()
}

/// The prime `--prime auto` would pick.
pub fn auto_field(h: &HsiaoMonoid) -> PrimeField {
    PrimeField::new(splitting_prime(h.group(), 3).unwrap()).unwrap()
}

pub fn osp(n: usize, blocks: &[&[usize]]) -> OrderedSetPartition {
    OrderedSetPartition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
}

/// Element of `h` with the given blocks and one group element per block.
pub fn element(h: &HsiaoMonoid, blocks: &[&[usize]], labels: &[usize]) -> usize {
    h.find(&osp(h.n(), blocks), labels).unwrap()
}
