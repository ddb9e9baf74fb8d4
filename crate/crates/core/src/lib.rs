//! Exact computations with Seiberg-Witten Floer spectra of rational homology
//! spheres: cell presentations, their equivariant and nonequivariant stable
//! homotopy groups in low stems, duality pairings and gluing.

pub mod applications;
pub mod catalog;
pub mod cells;
pub mod error;
pub mod forget;
pub mod homotopy;
pub mod morse;
pub mod pairing;
pub mod spectrum;
pub mod stems;
pub mod zlinalg;

pub use applications::{
    adjunction_negative_check, adjunction_positive_check, exotic_nuclei_check, relative_sw_series,
    LaurentPolynomial, NucleusParams, ObstructionReport, ObstructionVerdict,
};
pub use catalog::{
    n_invariant_lens, swf_brieskorn, swf_lens, swf_s3, BrieskornParams, LensParams, Orientation,
};
pub use cells::{Cell, Rational};
pub use error::{Error, Result};
pub use forget::forget;
pub use homotopy::{homotopy_group, HomotopyGroup};
pub use morse::{build_from_morse, CriticalPoint, MorseData};
pub use pairing::{duality_pairing, glue, RelativeInvariantClass};
pub use spectrum::SpectrumPresentation;
pub use stems::StemElement;
pub use zlinalg::{FGAbelianGroup, GroupElement, IntegerMatrix};
