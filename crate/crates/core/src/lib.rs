//! Noncrossing partitions, the dual Garside structure of the braid groups,
//! the Fix/Move decomposition of boundary braids, and orthoscheme complexes.
//!
//! Modules build on each other in order: [`ncpart`] supplies the lattice of
//! dual simple braids, [`garside`] turns it into braid group arithmetic,
//! [`boundary`] splits boundary braids into fixing and moving parts,
//! [`orthoscheme`] and [`confspace`] model the metric complexes, and
//! [`braidcplx`] ties everything together on finite balls of the dual braid
//! complex.

pub mod boundary;
pub mod braidcplx;
pub mod confspace;
pub mod error;
pub mod garside;
pub mod ncpart;
pub mod orthoscheme;

pub use error::{Error, Result};
pub use garside::{abelianize, invert, leq_prefix, multiply, normal_form, simple_product, DualSimpleWord, GarsideElement};
pub use ncpart::{complements, enumerate_nc, is_noncrossing, ComplementPair, NoncrossingPartition, Permutation};
