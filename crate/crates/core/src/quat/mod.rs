//! Quaternary sequences and their correlation and spectral primitives.

mod gauss;
mod seq;
mod spectrum;
mod unit;

pub use gauss::GaussInt;
pub use seq::{format_seq, parse_seq, QuatSeq, MAX_PACKED_LEN};
pub(crate) use seq::sum_units;
pub use spectrum::{
    dft, dft_exact_quarter, is_exact_point, paf, paf_vector, psd, psd_from_paf, psd_profile,
    PafVector, RootTable,
};
pub(crate) use spectrum::{dft_with, paf_unchecked};
pub use unit::Unit4;
