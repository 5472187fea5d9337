//! Canonical documents for the non-certificate commands.

use serde::Serialize;

use kosrec_core::cert::{ComplexDoc, DimDoc, MatrixDoc, ModuleDoc, RingDoc, SesDoc};

#[derive(Debug, Serialize)]
pub struct GbDoc {
    pub kind: &'static str,
    pub ring: RingDoc,
    /// `ideal` or the module name.
    pub target: String,
    pub rank: usize,
    pub basis: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct ResolutionDoc {
    pub kind: &'static str,
    pub ring: RingDoc,
    pub module: ModuleDoc,
    pub length: usize,
    pub betti: Vec<usize>,
    /// `d_1..d_length`.
    pub differentials: Vec<MatrixDoc>,
}

#[derive(Debug, Serialize)]
pub struct SyzygyDoc {
    pub kind: &'static str,
    pub ring: RingDoc,
    pub module: ModuleDoc,
    pub n: usize,
    pub syzygy: ModuleDoc,
    pub dimension: DimDoc,
}

#[derive(Debug, Serialize)]
pub struct ExtDoc {
    pub kind: &'static str,
    pub ring: RingDoc,
    pub m: ModuleDoc,
    pub n: ModuleDoc,
    pub i: usize,
    pub ext: ModuleDoc,
    pub dimension: DimDoc,
}

#[derive(Debug, Serialize)]
pub struct HomologyEntry {
    pub degree: i32,
    pub module: ModuleDoc,
    pub dimension: DimDoc,
}

#[derive(Debug, Serialize)]
pub struct KoszulDoc {
    pub kind: &'static str,
    pub ring: RingDoc,
    pub module: ModuleDoc,
    pub xs: Vec<String>,
    pub complex: ComplexDoc,
    pub homology: Vec<HomologyEntry>,
}

#[derive(Debug, Serialize)]
pub struct TowerDoc {
    pub kind: &'static str,
    pub ring: RingDoc,
    pub stages: Vec<ModuleDoc>,
    pub homology: Vec<ModuleDoc>,
    pub sequences: Vec<SesDoc>,
    pub section: MatrixDoc,
    pub retraction: MatrixDoc,
}
