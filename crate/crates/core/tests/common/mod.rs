//! Shared fixtures for the integration suites: an inventory of valid
//! surface-kernel cases over small groups, and an exhaustive move-table
//! sweep.
//!
//! Inventory bounds: group order at most 12, at most 8 periods, every period
//! at most 6.

use skmap::kernel::GeneratingVector;
use skmap::moves::consistency_check;
use skmap::word::OrbifoldSignature;
use skmap::{FiniteGroup, HarveyOp, MoveError};

pub struct Case {
    pub name: &'static str,
    pub group: FiniteGroup,
    pub sig: OrbifoldSignature,
    pub vec: GeneratingVector,
    /// Hand-computed expected kernel genus, used as an oracle for
    /// `kernel_genus` and for every downstream shape assertion.
    pub genus: usize,
}

pub fn klein() -> FiniteGroup {
    let table = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
    FiniteGroup::from_table(table).unwrap()
}

#[allow(clippy::too_many_arguments)]
fn case(
    name: &'static str,
    group: FiniteGroup,
    g0: usize,
    periods: &[usize],
    a: &[usize],
    b: &[usize],
    xi: &[usize],
    genus: usize,
) -> Case {
    Case {
        name,
        group,
        sig: OrbifoldSignature::new(g0, periods.to_vec()).unwrap(),
        vec: GeneratingVector::new(a.to_vec(), b.to_vec(), xi.to_vec()).unwrap(),
        genus,
    }
}

/// Valid surface-kernel data covering trivial, cyclic, Klein, symmetric and
/// dihedral groups, base genus 0 through 2, and kernel genus 1 through 14.
/// Dihedral indices: `0..m` are rotations `r^k`, `m..2m` reflections `s r^k`.
pub fn inventory() -> Vec<Case> {
    vec![
        case("Z1 free genus-2 cover", FiniteGroup::cyclic(1).unwrap(), 2, &[], &[0, 0], &[0, 0], &[], 2),
        case("Z2 hyperelliptic genus-2", FiniteGroup::cyclic(2).unwrap(), 0, &[2, 2, 2, 2, 2, 2], &[], &[], &[1, 1, 1, 1, 1, 1], 2),
        case("Z2 free genus-3 cover", FiniteGroup::cyclic(2).unwrap(), 2, &[], &[1, 0], &[0, 0], &[], 3),
        case("Z3 euclidean (3,3,3)", FiniteGroup::cyclic(3).unwrap(), 0, &[3, 3, 3], &[], &[], &[1, 1, 1], 1),
        case("Z3 torus with three branch points", FiniteGroup::cyclic(3).unwrap(), 1, &[3, 3, 3], &[0], &[0], &[1, 1, 1], 4),
        case("Z4 euclidean (2,4,4)", FiniteGroup::cyclic(4).unwrap(), 0, &[2, 4, 4], &[], &[], &[2, 1, 1], 1),
        case("Z4 genus-3 (4,4,4,4)", FiniteGroup::cyclic(4).unwrap(), 0, &[4, 4, 4, 4], &[], &[], &[1, 3, 1, 3], 3),
        case("Z5 genus-2 (5,5,5)", FiniteGroup::cyclic(5).unwrap(), 0, &[5, 5, 5], &[], &[], &[1, 1, 3], 2),
        case("Z6 euclidean (2,3,6)", FiniteGroup::cyclic(6).unwrap(), 0, &[2, 3, 6], &[], &[], &[3, 2, 1], 1),
        case("Z6 genus-2 (2,2,3,3)", FiniteGroup::cyclic(6).unwrap(), 0, &[2, 2, 3, 3], &[], &[], &[3, 3, 2, 4], 2),
        case("Z8 branched torus (2,2)", FiniteGroup::cyclic(8).unwrap(), 1, &[2, 2], &[1], &[0], &[4, 4], 5),
        case("Z12 genus-7 (3,4,4,6)", FiniteGroup::cyclic(12).unwrap(), 0, &[3, 4, 4, 6], &[], &[], &[8, 3, 3, 10], 7),
        case("Klein euclidean (2,2,2,2)", klein(), 0, &[2, 2, 2, 2], &[], &[], &[1, 2, 1, 2], 1),
        case("Klein genus-3 (2^6)", klein(), 0, &[2, 2, 2, 2, 2, 2], &[], &[], &[1, 1, 2, 2, 3, 3], 3),
        case("S3 genus-2 (2,2,3,3)", FiniteGroup::symmetric(3).unwrap(), 0, &[2, 2, 3, 3], &[], &[], &[1, 1, 4, 5], 2),
        case("S3 branched torus (2,2)", FiniteGroup::symmetric(3).unwrap(), 1, &[2, 2], &[1], &[4], &[1, 3], 4),
        case("S3 free genus-7 cover", FiniteGroup::symmetric(3).unwrap(), 2, &[], &[1, 1], &[2, 4], &[], 7),
        case("S3 genus-8 principal", FiniteGroup::symmetric(3).unwrap(), 0, &[2, 2, 2, 2, 2, 2, 3, 3], &[], &[], &[1, 1, 2, 2, 3, 3, 4, 5], 8),
        case("S3 genus-14 torus variant", FiniteGroup::symmetric(3).unwrap(), 1, &[2, 2, 2, 2, 2, 2, 3, 3], &[0], &[0], &[1, 1, 2, 2, 3, 3, 4, 5], 14),
        case("D4 euclidean reflections", FiniteGroup::dihedral(4).unwrap(), 0, &[2, 2, 2, 2], &[], &[], &[4, 5, 5, 4], 1),
        case("D4 genus-2 (2,2,2,4)", FiniteGroup::dihedral(4).unwrap(), 0, &[2, 2, 2, 4], &[], &[], &[4, 5, 2, 1], 2),
        case("D5 genus-4 (2,2,5,5)", FiniteGroup::dihedral(5).unwrap(), 0, &[2, 2, 5, 5], &[], &[], &[5, 6, 1, 3], 4),
        case("D6 genus-5 (2,2,2,2,3)", FiniteGroup::dihedral(6).unwrap(), 0, &[2, 2, 2, 2, 3], &[], &[], &[6, 7, 6, 9, 2], 5),
        case("D6 branched torus (3)", FiniteGroup::dihedral(6).unwrap(), 1, &[3], &[6], &[1], &[2], 5),
    ]
}

/// Groups of order at most 8, for the exhaustive move-table sweep.
pub fn small_groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("Z2", FiniteGroup::cyclic(2).unwrap()),
        ("Z3", FiniteGroup::cyclic(3).unwrap()),
        ("Z4", FiniteGroup::cyclic(4).unwrap()),
        ("Z6", FiniteGroup::cyclic(6).unwrap()),
        ("Z8", FiniteGroup::cyclic(8).unwrap()),
        ("Klein", klein()),
        ("S3", FiniteGroup::symmetric(3).unwrap()),
        ("D4", FiniteGroup::dihedral(4).unwrap()),
    ]
}

/// Exhaustively check, for every image tuple of the one-handle-one-period and
/// two-handle shapes, that each applicable move's tabulated image formula
/// agrees with evaluating its word-level substitution. Panics on any
/// disagreement or unexpected error; the only tolerated soft failure is the
/// commutation precondition of `V4`, which must itself be genuine. Returns
/// `(tuples_checked, v4_skips)`.
pub fn exhaustive_move_sweep(name: &str, group: &FiniteGroup) -> (usize, usize) {
    let one_handle = OrbifoldSignature::new(1, vec![2]).unwrap();
    let two_handles = OrbifoldSignature::new(2, vec![]).unwrap();
    let n = group.order();
    let mut checked = 0usize;
    let mut v4_skips = 0usize;

    // Shape (1; m): one handle pair and one elliptic image.
    for a in 0..n {
        for b in 0..n {
            for x in 0..n {
                let vec = GeneratingVector::new(vec![a], vec![b], vec![x]).unwrap();
                for op in [HarveyOp::V1, HarveyOp::V2, HarveyOp::V4] {
                    match consistency_check(group, &one_handle, &vec, op) {
                        Ok(true) => checked += 1,
                        Ok(false) => panic!(
                            "{name}: table and substitution disagree for {op} on ({a},{b};{x})"
                        ),
                        Err(MoveError::PreconditionFailed { op: HarveyOp::V4, .. }) => {
                            v4_skips += 1;
                            assert!(
                                !group.is_abelian() && !group.in_cyclic_span(a, x),
                                "{name}: V4 skipped on ({a},{b};{x}) although its \
                                 precondition holds"
                            );
                        }
                        Err(e) => panic!("{name}: unexpected error for {op}: {e}"),
                    }
                }
            }
        }
    }

    // Shape (2; -): two handle pairs, no elliptic images.
    for a1 in 0..n {
        for b1 in 0..n {
            for a2 in 0..n {
                for b2 in 0..n {
                    let vec = GeneratingVector::new(vec![a1, a2], vec![b1, b2], vec![]).unwrap();
                    for op in [HarveyOp::V1, HarveyOp::V2, HarveyOp::V3, HarveyOp::Bhat(1)] {
                        match consistency_check(group, &two_handles, &vec, op) {
                            Ok(true) => checked += 1,
                            other => {
                                panic!("{name}: {op} on ({a1},{b1},{a2},{b2}) gave {other:?}")
                            }
                        }
                    }
                }
            }
        }
    }
    (checked, v4_skips)
}
