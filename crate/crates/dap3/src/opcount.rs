//! Thread-local primitive-operation counter.
//!
//! The constructive algorithms are instrumented with the same accounting the
//! complexity analysis uses: one unit per cell assignment, per computed
//! element, and per comparison in the hot loops. Tests read the counter to
//! check the advertised linear (or near-linear) growth.

use std::cell::Cell;

thread_local! {
    static OPS: Cell<u64> = const { Cell::new(0) };
}

pub fn reset() {
    OPS.with(|c| c.set(0));
}

pub fn total() -> u64 {
    OPS.with(|c| c.get())
}

pub(crate) fn bump(n: u64) {
    OPS.with(|c| c.set(c.get() + n));
}

/// Runs `f` with a fresh counter and returns its result plus the ops consumed.
pub fn measure<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let before = total();
    reset();
    let out = f();
    let used = total();
    OPS.with(|c| c.set(before + used));
    (out, used)
}
