//! Process-wide record of which public operations have run.
//!
//! Each operation sets one flag on entry; reading the flags never blocks.

use std::sync::atomic::{AtomicBool, Ordering};

macro_rules! ops {
    ($($variant:ident => $name:literal,)*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Op {
            $($variant,)*
        }

        impl Op {
            pub const ALL: &'static [Op] = &[$(Op::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(Op::$variant => $name,)*
                }
            }
        }
    };
}

ops! {
    MonomialIndex => "monomial_index",
    PolyMul => "poly_mul",
    SubstituteLine => "substitute_line",
    KernelBasis => "kernel_basis",
    ParseArrangement => "parse_arrangement",
    IntersectionPoints => "intersection_points",
    Chi0 => "chi0",
    NH => "n_H",
    IsBalanced => "is_balanced",
    NrForm => "nr_form",
    ZieglerRestriction => "ziegler_restriction",
    DerivDim => "deriv_dim",
    Exponents => "exponents",
    Basis => "basis",
    SaitoCheck => "saito_check",
    ArDim => "ar_dim",
    MinimalResolution => "minimal_resolution",
    Classify => "classify",
    DhBasis => "dh_basis",
    ZieglerMap => "ziegler_map",
    YoshinagaDefect => "yoshinaga_defect",
    NearlyFreeByCriterion => "nearly_free_by_criterion",
    SplittingType => "splitting_type",
    PropertyP => "property_P",
    SplittingRange => "splitting_range",
    Verify => "verify",
}

static HITS: [AtomicBool; Op::ALL.len()] = [const { AtomicBool::new(false) }; Op::ALL.len()];

#[inline]
pub(crate) fn hit(op: Op) {
    let flag = &HITS[op as usize];
    if !flag.load(Ordering::Relaxed) {
        flag.store(true, Ordering::Relaxed);
    }
}

/// Operations that have run since start-up or the last [`reset`].
pub fn seen() -> Vec<Op> {
    Op::ALL.iter().copied().filter(|&op| HITS[op as usize].load(Ordering::Relaxed)).collect()
}

/// Operations that have not run.
pub fn missing() -> Vec<Op> {
    Op::ALL.iter().copied().filter(|&op| !HITS[op as usize].load(Ordering::Relaxed)).collect()
}

pub fn reset() {
    for flag in &HITS {
        flag.store(false, Ordering::Relaxed);
    }
}
