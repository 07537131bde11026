//! Distance multisets of modular arithmetic progressions, Erdős-deep
//! families, and the searches and constructions around them.

pub mod bounds;
pub mod construct;
pub mod error;
pub mod hitting;
pub mod literal;
pub mod par;
pub mod search;
pub mod zn;

pub use error::{Error, Result};
pub use literal::parse_family;
pub use zn::{
    classify_deep, delta_ap, delta_family, delta_oracle, is_winograd_deep, DeepVerdict,
    DistanceMultiset, Family, Member, ModularAp, Modulus, ZSet,
};
