pub mod cli;
pub mod coeffield;
pub mod error;
pub mod gaussmanin;
pub mod linalg;
pub mod localcoh;
pub mod localstd;
pub mod logvf;
pub mod poly;
pub mod residues;

#[cfg(test)]
pub(crate) mod testutil;
