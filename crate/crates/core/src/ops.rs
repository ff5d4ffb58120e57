//! Field-operation counters.
//!
//! The decoders are compared by how much table arithmetic they perform, so the
//! field core reports every Zech evaluation, every multiplication (exponent
//! addition or companion-power application), and every linear solve through
//! the hooks below. Counters are per-thread; a caller snapshots before a unit
//! of work and diffs after, which stays exact under a rayon pool because one
//! closure invocation never migrates between threads.
//!
//! Without the `op-count` feature everything here compiles to no-ops and
//! [`snapshot`] always returns zeros.

/// Point-in-time counter values for the current thread.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct OpCounts {
    pub zech_evals: u64,
    pub field_mults: u64,
    pub linear_solves: u64,
}

impl OpCounts {
    pub fn saturating_sub(self, base: OpCounts) -> OpCounts {
        OpCounts {
            zech_evals: self.zech_evals - base.zech_evals,
            field_mults: self.field_mults - base.field_mults,
            linear_solves: self.linear_solves - base.linear_solves,
        }
    }
}

#[cfg(feature = "op-count")]
mod imp {
    use super::OpCounts;
    use std::cell::Cell;

    thread_local! {
        static ZECH: Cell<u64> = const { Cell::new(0) };
        static MULT: Cell<u64> = const { Cell::new(0) };
        static SOLVE: Cell<u64> = const { Cell::new(0) };
    }

    #[inline]
    pub(crate) fn bump_zech() {
        ZECH.with(|c| c.set(c.get() + 1));
    }

    #[inline]
    pub(crate) fn bump_mult() {
        MULT.with(|c| c.set(c.get() + 1));
    }

    #[inline]
    pub(crate) fn bump_solve() {
        SOLVE.with(|c| c.set(c.get() + 1));
    }

    pub fn snapshot() -> OpCounts {
        OpCounts {
            zech_evals: ZECH.with(Cell::get),
            field_mults: MULT.with(Cell::get),
            linear_solves: SOLVE.with(Cell::get),
        }
    }
}

#[cfg(not(feature = "op-count"))]
mod imp {
    use super::OpCounts;

    #[inline]
    pub(crate) fn bump_zech() {}
    #[inline]
    pub(crate) fn bump_mult() {}
    #[inline]
    pub(crate) fn bump_solve() {}

    pub fn snapshot() -> OpCounts {
        OpCounts::default()
    }
}

pub use imp::snapshot;
pub(crate) use imp::{bump_mult, bump_solve, bump_zech};

/// Counter increments on the current thread since `base`.
pub fn since(base: OpCounts) -> OpCounts {
    snapshot().saturating_sub(base)
}
