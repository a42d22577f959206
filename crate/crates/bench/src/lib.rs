//! Benchmark fixtures shared by the criterion targets.

use sensilab_core::{BooleanFunction, TruthTable};

/// A fixed pseudo-random table of the given arity.
pub fn scrambled(arity: usize) -> TruthTable {
    BooleanFunction::from_fn(arity, |x| {
        (x ^ 0x9E37_79B9).wrapping_mul(0x2545_F491_4F6C_DD1D) >> 63 == 1
    })
    .and_then(|f| f.materialize())
    .expect("arity within cap")
}
