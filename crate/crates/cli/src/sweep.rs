//! Sweep axes and nested grid iteration.

use crate::CliError;

/// One linearly spaced sweep axis.
#[derive(Debug, Clone)]
pub struct Axis {
    pub name: &'static str,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(name: &'static str, start: f64, stop: f64, count: usize) -> Result<Self, CliError> {
        let axis = Self { name, start, stop, count };
        axis.validate()?;
        Ok(axis)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.count < 2 {
            return Err(CliError::Usage(format!(
                "axis {}: need at least 2 points, got {}",
                self.name, self.count
            )));
        }
        if !(self.start < self.stop) || !self.start.is_finite() || !self.stop.is_finite() {
            return Err(CliError::Usage(format!(
                "axis {}: need start < stop, got [{}, {}]",
                self.name, self.start, self.stop
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count)
            .map(|k| {
                self.start + (self.stop - self.start) * k as f64 / (self.count - 1) as f64
            })
            .collect()
    }
}

/// Axis specifications iterated in nested order, first axis outermost.
#[derive(Debug, Clone)]
pub struct SweepGrid {
    pub axes: Vec<Axis>,
}

impl SweepGrid {
    pub fn new(axes: Vec<Axis>) -> Self {
        Self { axes }
    }

    /// All grid points in deterministic row order.
    pub fn rows(&self) -> Vec<Vec<f64>> {
        let mut rows: Vec<Vec<f64>> = vec![Vec::new()];
        for axis in &self.axes {
            let values = axis.values();
            let mut next = Vec::with_capacity(rows.len() * values.len());
            for prefix in &rows {
                for v in &values {
                    let mut row = prefix.clone();
                    row.push(*v);
                    next.push(row);
                }
            }
            rows = next;
        }
        rows
    }
}
