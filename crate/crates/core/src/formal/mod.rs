//! Exact formal engine: the free algebra on `{T0, T1}`, truncated series over `Q`,
//! multiple polylogarithms and the hypergeometric identities built from them.

pub mod hgformal;
pub mod kz;
pub mod mpl;
pub mod ncpoly;
pub mod series;
pub mod word;
