//! Exact computations with flats of small affine spaces AG(n, q).
//!
//! The crate provides, bottom to top: table-driven arithmetic in GF(q) for
//! q ∈ {2, 3, 4, 5, 7, 8, 9} ([`gf`]), exact row-reduction and subspace
//! operations ([`linalg`]), flats as canonical cosets with intersection /
//! join / enumeration ([`affine`]), arbitrary-precision evaluation of the
//! counting formulas that govern families of flats ([`counting`]), concrete
//! family constructions and cross-intersection analysis ([`families`]), and
//! a formula-versus-enumeration verification harness ([`verify`]).

pub mod gf;
pub mod affine;
pub mod counting;
pub mod families;
pub mod linalg;
pub mod verify;

/// Caps the rayon worker pool used by the parallel scans. Call once, early;
/// later calls are ignored (the first build wins). `None` keeps the default.
pub fn configure_worker_cap(workers: Option<usize>) {
    if let Some(n) = workers {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}
