//! Global guard on intermediate term counts.
//!
//! Power iterations and operator products can blow up combinatorially on
//! adversarial inputs. Front ends may install a cap; arithmetic kernels check
//! it while accumulating and panic with a recognizable message when exceeded,
//! which the CLI reports as a resource diagnostic.

use std::sync::atomic::{AtomicUsize, Ordering};

static MAX_TERMS: AtomicUsize = AtomicUsize::new(usize::MAX);

/// Message prefix of the panic raised when the cap is exceeded.
pub const TERM_CAP_MESSAGE: &str = "term budget exceeded";

/// Installs a cap on the support size of intermediate polynomials and
/// Grassmann elements. `None` removes the cap.
pub fn set_max_terms(cap: Option<usize>) {
    MAX_TERMS.store(cap.unwrap_or(usize::MAX), Ordering::Relaxed);
}

/// Current cap, for arithmetic kernels to check against.
pub(crate) fn max_terms() -> usize {
    MAX_TERMS.load(Ordering::Relaxed)
}

/// Panics if `len` exceeds the installed cap.
#[inline]
pub(crate) fn check_terms(len: usize, cap: usize) {
    if len > cap {
        panic!("{TERM_CAP_MESSAGE}: {len} terms > cap {cap}");
    }
}
