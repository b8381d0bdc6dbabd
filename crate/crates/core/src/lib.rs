pub mod approx;
pub mod error;
pub mod golden;
pub mod group;
pub mod quaternion;
pub mod roots;
pub mod sample;
pub mod verify;

pub use error::{Error, Result};
pub use golden::{DyadicGolden, GoldenInt, F4};
pub use quaternion::{ExactSu2, FloatSu2, QuatR, So3Matrix};
pub use roots::{ClassSpace, Dimension, Family, Filtration, RootSet, RootTag, Side};
pub use group::{GeneratorWord, SigmaNormalForm};
pub use approx::{ApproxResult, MirrorSet};
pub use verify::{Suite, VerifyReport};
