//! Filtration checks for GL(m|n) supermodules over fields of odd characteristic.

pub mod characters;
pub mod gl_modules;
pub mod grassmann;
pub mod linalg;
pub mod supermatrix;
pub mod weights;

pub use characters::{Character, CharacterError, Decomposition, FiltrationBasis};
pub use gl_modules::{FiltrationVerdict, GLModule};
pub use grassmann::{ESuperModule, GrassmannAlgebra, GrassmannError};
pub use linalg::FpMatrix;
pub use supermatrix::{GrassmannQ, SuperMatrix};
pub use weights::{BlockShape, Weight, WeightError};
