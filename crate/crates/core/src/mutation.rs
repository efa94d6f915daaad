//! Deliberate construction faults, used to check that the test suites are
//! sensitive to them. Scoped to the current thread.

use std::cell::Cell;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Mutations {
    /// Embed `H_1` into `M_1 + N` by `x -> (x, +f x)` instead of `(x, -f x)`.
    pub flip_post_sign: bool,
    /// Accept splittings that violate `ker b ⊆ im a`.
    pub drop_side_condition: bool,
}

thread_local! {
    static ACTIVE: Cell<Mutations> = const { Cell::new(Mutations { flip_post_sign: false, drop_side_condition: false }) };
}

pub fn active() -> Mutations {
    ACTIVE.with(|c| c.get())
}

/// Run `f` with the given mutations switched on.
pub fn with_mutations<R>(m: Mutations, f: impl FnOnce() -> R) -> R {
    struct Restore(Mutations);
    impl Drop for Restore {
        fn drop(&mut self) {
            ACTIVE.with(|c| c.set(self.0));
        }
    }
    let _guard = Restore(ACTIVE.with(|c| c.replace(m)));
    f()
}
