use crate::error::{invalid, Result};

/// Resource limits shared across the crate. Exceeding a cap is always a loud
/// error, never silent truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest number of incidence coordinates a single index may enumerate.
    pub coords: usize,
    /// Largest graph the exact solver accepts.
    pub solver_vertices: usize,
    /// Largest deletion budget the exact solver accepts.
    pub solver_budget: usize,
    /// Largest |D| for which replacement subsets are enumerated.
    pub subset: usize,
    /// Largest graph a hardness construction may emit.
    pub construction_vertices: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            coords: 1 << 22,
            solver_vertices: 24,
            solver_budget: 5,
            subset: 20,
            construction_vertices: 1 << 20,
        }
    }
}

impl Caps {
    /// Parses a comma-separated `key=value` list, e.g.
    /// `coords=1048576,solver-vertices=20`. Unknown keys are errors.
    pub fn parse_overrides(&self, s: &str) -> Result<Caps> {
        let mut caps = self.clone();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| invalid(format!("cap override `{part}` is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| invalid(format!("cap value in `{part}` is not a number")))?;
            match key.trim() {
                "coords" => caps.coords = value,
                "solver-vertices" => caps.solver_vertices = value,
                "solver-budget" => caps.solver_budget = value,
                "subset" => caps.subset = value,
                "construction-vertices" => caps.construction_vertices = value,
                other => return Err(invalid(format!("unknown cap `{other}`"))),
            }
        }
        Ok(caps)
    }
}
