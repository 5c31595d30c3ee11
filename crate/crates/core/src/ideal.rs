//! Coordinate ideals `⟨z^1, …, z^l⟩` with exact power-membership queries.

use crate::chart::{Chart, VarKind};
use crate::error::CoreError;
use crate::poly::Poly;
use std::sync::Arc;

/// An ideal generated by a subset of the holomorphic coordinates of a chart.
/// Membership in `I^m` is decidable by a monomial degree scan; general ideals
/// are out of scope.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordIdeal {
    chart: Arc<Chart>,
    /// Generator variable indices (holomorphic generators of the chart).
    generators: Vec<usize>,
}

impl CoordIdeal {
    pub fn new(chart: &Arc<Chart>, generators: Vec<usize>) -> Result<Self, CoreError> {
        let mut seen = std::collections::BTreeSet::new();
        for &g in &generators {
            if g >= chart.nvars() || chart.kind(g) != VarKind::Holo {
                return Err(CoreError::InvalidInput(format!(
                    "ideal generator index {} is not a holomorphic coordinate",
                    g
                )));
            }
            if !seen.insert(g) {
                return Err(CoreError::InvalidInput(
                    "repeated ideal generator".to_string(),
                ));
            }
        }
        Ok(CoordIdeal {
            chart: chart.clone(),
            generators,
        })
    }

    /// Ideal generated by the first `l` holomorphic coordinates.
    pub fn first_holo(chart: &Arc<Chart>, l: usize) -> Result<Self, CoreError> {
        if l > chart.n_holo() {
            return Err(CoreError::IndexOutOfRange(l, chart.n_holo()));
        }
        CoordIdeal::new(chart, (0..l).map(|j| chart.holo_var(j)).collect())
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn codim(&self) -> usize {
        self.generators.len()
    }

    /// `f ∈ I^m`: every monomial has total degree ≥ m in the generators.
    /// The zero polynomial belongs to every power.
    pub fn membership(&self, f: &Poly, m: u32) -> Result<bool, CoreError> {
        Chart::same(&self.chart, f.chart())?;
        Ok(f.terms().all(|(mono, _)| mono.degree_in(&self.generators) >= m))
    }

    /// Leading (graded-lex largest) monomial witnessing failure of `f ∈ I^m`.
    pub fn membership_witness(&self, f: &Poly, m: u32) -> Result<Option<String>, CoreError> {
        Chart::same(&self.chart, f.chart())?;
        Ok(f.terms()
            .filter(|(mono, _)| mono.degree_in(&self.generators) < m)
            .map(|(mono, _)| mono)
            .max()
            .map(|mono| crate::poly::render_monomial(&self.chart, mono)))
    }
}
