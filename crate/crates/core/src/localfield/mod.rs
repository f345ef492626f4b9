//! Exact arithmetic for the base rings and both families of local fields,
//! plus the height function.

pub mod fq;
pub mod fqpoly;
pub mod height;
pub mod local;
pub mod ratfn;
pub mod ratnum;

pub use fq::{FqElem, FqTable};
pub use fqpoly::FqPoly;
pub use height::{height_fn, height_num, Height};
pub use local::{
    embed_poly, embed_ratfn, embed_ratnum, Flavor, LaurentParams, LocalFieldElem,
};
pub use ratfn::RationalFn;
pub use ratnum::RationalNum;
