//! Thread fan-out for the per-vertex core searches.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use twhom_core::cores::{avoid_vertex, is_core, CoreCertificate};
use twhom_core::{Graph, Limits, Result};

/// [`is_core`] with the per-vertex searches spread over `threads` workers.
///
/// With more than one thread every vertex is searched, so the certificate
/// lists all searches; the verdict and witness do not depend on `threads`.
pub fn core_check(h: &Graph, limits: &Limits, threads: usize) -> Result<CoreCertificate> {
    if threads <= 1 || h.n() < 2 {
        return is_core(h, limits);
    }
    let next = AtomicUsize::new(0);
    let results = Mutex::new(Vec::with_capacity(h.n()));
    std::thread::scope(|s| {
        for _ in 0..threads.min(h.n()) {
            s.spawn(|| loop {
                let v = next.fetch_add(1, Ordering::Relaxed);
                if v >= h.n() {
                    break;
                }
                let r = avoid_vertex(h, v, limits);
                results.lock().expect("results lock").push(r);
            });
        }
    });
    let searches = results.into_inner().expect("results lock").into_iter().collect::<Result<Vec<_>>>()?;
    Ok(CoreCertificate::from_searches(searches))
}
