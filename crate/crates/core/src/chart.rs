//! Coordinate charts: ordered real coordinates plus holomorphic pairs.

use crate::error::CoreError;
use std::fmt;
use std::sync::Arc;

/// The role of a single polynomial generator on a chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarKind {
    Real,
    Holo,
    AntiHolo,
}

/// An immutable coordinate chart.
///
/// Generators are indexed `0..nvars()`: first the real coordinates in
/// declaration order, then for each holomorphic coordinate `z^j` the pair
/// `(z^j, z̄^j)`. The conjugate generator of every holomorphic coordinate is
/// implicit in the declaration and gets the name of the coordinate with
/// `bar` spliced in before any trailing digits (`z1` ↦ `zbar1`).
#[derive(Debug, PartialEq, Eq)]
pub struct Chart {
    real_names: Vec<String>,
    holo_names: Vec<String>,
    var_names: Vec<String>,
}

/// Splice `bar` into a holomorphic coordinate name: stem + digits ↦ stem + "bar" + digits.
pub fn conjugate_name(name: &str) -> String {
    let split = name
        .char_indices()
        .rev()
        .take_while(|(_, c)| c.is_ascii_digit())
        .last()
        .map(|(i, _)| i)
        .unwrap_or(name.len());
    format!("{}bar{}", &name[..split], &name[split..])
}

impl Chart {
    pub fn new(
        real_names: Vec<String>,
        holo_names: Vec<String>,
    ) -> Result<Arc<Chart>, CoreError> {
        let mut var_names = Vec::with_capacity(real_names.len() + 2 * holo_names.len());
        var_names.extend(real_names.iter().cloned());
        for h in &holo_names {
            var_names.push(h.clone());
            var_names.push(conjugate_name(h));
        }
        let mut seen = std::collections::BTreeSet::new();
        for n in &var_names {
            if n.is_empty() || !seen.insert(n.clone()) {
                return Err(CoreError::BadChart(format!(
                    "duplicate or empty coordinate name `{}`",
                    n
                )));
            }
        }
        Ok(Arc::new(Chart {
            real_names,
            holo_names,
            var_names,
        }))
    }

    /// Chart with real coordinates `x1..xm` only.
    pub fn real(m: usize) -> Arc<Chart> {
        Chart::new((1..=m).map(|i| format!("x{}", i)).collect(), vec![]).unwrap()
    }

    /// Chart with holomorphic coordinates `z1..zk` only.
    pub fn holo(k: usize) -> Arc<Chart> {
        Chart::new(vec![], (1..=k).map(|i| format!("z{}", i)).collect()).unwrap()
    }

    pub fn n_real(&self) -> usize {
        self.real_names.len()
    }

    pub fn n_holo(&self) -> usize {
        self.holo_names.len()
    }

    /// Number of polynomial generators (= real dimension of the chart).
    pub fn nvars(&self) -> usize {
        self.real_names.len() + 2 * self.holo_names.len()
    }

    pub fn kind(&self, var: usize) -> VarKind {
        if var < self.real_names.len() {
            VarKind::Real
        } else if (var - self.real_names.len()) % 2 == 0 {
            VarKind::Holo
        } else {
            VarKind::AntiHolo
        }
    }

    /// Generator index of the j-th holomorphic coordinate (0-based).
    pub fn holo_var(&self, j: usize) -> usize {
        self.real_names.len() + 2 * j
    }

    /// Generator index of the conjugate of the j-th holomorphic coordinate.
    pub fn antiholo_var(&self, j: usize) -> usize {
        self.real_names.len() + 2 * j + 1
    }

    /// Index swap under conjugation; real generators are fixed.
    pub fn conj_var(&self, var: usize) -> usize {
        match self.kind(var) {
            VarKind::Real => var,
            VarKind::Holo => var + 1,
            VarKind::AntiHolo => var - 1,
        }
    }

    pub fn var_name(&self, var: usize) -> &str {
        &self.var_names[var]
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn real_names(&self) -> &[String] {
        &self.real_names
    }

    pub fn holo_names(&self) -> &[String] {
        &self.holo_names
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|n| n == name)
    }

    /// Check that two values live on the same chart (by content).
    pub fn same(a: &Arc<Chart>, b: &Arc<Chart>) -> Result<(), CoreError> {
        if Arc::ptr_eq(a, b) || a == b {
            Ok(())
        } else {
            Err(CoreError::ChartMismatch)
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "chart(real: [{}], holo: [{}])",
            self.real_names.join(", "),
            self.holo_names.join(", ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naming_and_indices() {
        let c = Chart::new(
            vec!["x1".into(), "x2".into()],
            vec!["z1".into(), "w".into()],
        )
        .unwrap();
        assert_eq!(c.nvars(), 6);
        assert_eq!(c.var_name(2), "z1");
        assert_eq!(c.var_name(3), "zbar1");
        assert_eq!(c.var_name(4), "w");
        assert_eq!(c.var_name(5), "wbar");
        assert_eq!(c.conj_var(2), 3);
        assert_eq!(c.conj_var(3), 2);
        assert_eq!(c.conj_var(0), 0);
        assert_eq!(c.lookup("zbar1"), Some(3));
        assert_eq!(c.kind(4), VarKind::Holo);
    }

    #[test]
    fn rejects_duplicates() {
        assert!(Chart::new(vec!["x".into(), "x".into()], vec![]).is_err());
    }
}
