//! Charts of the projective plane, Poincare maps and projectively reduced
//! systems.

mod chart;
mod reduce;

pub use chart::{
    direction_point, disc_embed, disc_of_homogeneous, infinite_direction_chart, map_point_f64,
    p1, p2, poincare_map_point, ChartId, Direction, Transformation,
};
pub(crate) use reduce::w_component;
pub use reduce::{
    predict_degrees, projective_type, reduce_system, wn_polynomial, DegreePrediction,
    ProjectiveKind, ProjectiveTypeReport, ReducedSystem,
};

use std::fmt;

use thiserror::Error;

use crate::poly::{gcd_bivariate, parse_polynomial, ParseError, Poly2, Poly2F};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProjectiveError {
    #[error("point lies on the line {line} where the map is undefined")]
    MappedToInfinity { line: &'static str },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SystemError {
    #[error("in the equation for {var}': {source}")]
    Polynomial {
        var: String,
        #[source]
        source: ParseError,
    },
    #[error("malformed system: {0}")]
    Malformed(String),
    #[error("unsupported variable pair ({0}, {1}); expected x,y or xi,theta or eta,zeta")]
    Variables(String, String),
    #[error("hypothesis |X_n| + |Y_n| != 0 violated: both right-hand sides are zero")]
    ZeroField,
    #[error("right-hand sides share the nonconstant factor {0}")]
    CommonFactor(String),
}

/// `u' = X(u, v), v' = Y(u, v)` in one of the charts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneSystem {
    pub x: Poly2,
    pub y: Poly2,
    pub chart: ChartId,
}

impl PlaneSystem {
    /// Validates `X, Y` not both zero and coprime.
    pub fn new(x: Poly2, y: Poly2, chart: ChartId) -> Result<Self, SystemError> {
        if x.is_zero() && y.is_zero() {
            return Err(SystemError::ZeroField);
        }
        let g = gcd_bivariate(&x, &y);
        if !g.is_constant() {
            let [a, b] = chart.var_names();
            return Err(SystemError::CommonFactor(g.to_string_vars(a, b)));
        }
        Ok(PlaneSystem { x, y, chart })
    }

    pub(crate) fn new_unchecked(x: Poly2, y: Poly2, chart: ChartId) -> Self {
        PlaneSystem { x, y, chart }
    }

    /// Parse `x' = <poly>; y' = <poly>` (also with `xi, theta` or `eta, zeta`).
    pub fn parse(src: &str) -> Result<Self, SystemError> {
        let parts: Vec<&str> = src.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
        if parts.len() != 2 {
            return Err(SystemError::Malformed(format!(
                "expected two equations separated by ';', found {}",
                parts.len()
            )));
        }
        let mut names = Vec::new();
        let mut rhs = Vec::new();
        for part in &parts {
            let (lhs, r) = part
                .split_once('=')
                .ok_or_else(|| SystemError::Malformed(format!("missing '=' in \"{part}\"")))?;
            let lhs = lhs.trim();
            let name = lhs
                .strip_suffix('\'')
                .map(str::trim)
                .ok_or_else(|| SystemError::Malformed(format!("left-hand side \"{lhs}\" must be a derivative like x'")))?;
            names.push(name.to_string());
            rhs.push(r.to_string());
        }
        let chart = ChartId::from_var_names(&names[0], &names[1])
            .ok_or_else(|| SystemError::Variables(names[0].clone(), names[1].clone()))?;
        let vars = chart.var_names();
        let mut polys = Vec::new();
        for (name, r) in names.iter().zip(&rhs) {
            polys.push(parse_polynomial(r, vars).map_err(|source| SystemError::Polynomial {
                var: name.clone(),
                source,
            })?);
        }
        let y = polys.pop().unwrap();
        let x = polys.pop().unwrap();
        PlaneSystem::new(x, y, chart)
    }

    /// `n = max(deg X, deg Y)`.
    pub fn degree(&self) -> u32 {
        self.x.degree().unwrap_or(0).max(self.y.degree().unwrap_or(0))
    }

    pub fn var_names(&self) -> [&'static str; 2] {
        self.chart.var_names()
    }

    pub fn first_component(&self) -> String {
        let [a, b] = self.var_names();
        self.x.to_string_vars(a, b)
    }

    pub fn second_component(&self) -> String {
        let [a, b] = self.var_names();
        self.y.to_string_vars(a, b)
    }

    pub fn to_f64(&self) -> FieldF {
        FieldF { x: self.x.to_f64(), y: self.y.to_f64() }
    }

    /// Divergence `dX/du + dY/dv`.
    pub fn divergence(&self) -> Poly2 {
        &self.x.dx() + &self.y.dy()
    }
}

impl fmt::Display for PlaneSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b] = self.var_names();
        write!(f, "{a}' = {}; {b}' = {}", self.first_component(), self.second_component())
    }
}

/// Float evaluation form of a vector field.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldF {
    pub x: Poly2F,
    pub y: Poly2F,
}

impl FieldF {
    pub fn eval(&self, p: (f64, f64)) -> (f64, f64) {
        (self.x.eval(p.0, p.1), self.y.eval(p.0, p.1))
    }

    pub fn jacobian(&self, p: (f64, f64)) -> [[f64; 2]; 2] {
        let (a, b) = self.x.gradient(p.0, p.1);
        let (c, d) = self.y.gradient(p.0, p.1);
        [[a, b], [c, d]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let s = PlaneSystem::parse("x' = -y + x^3; y' = x + x^2*y").unwrap();
        assert_eq!(s.degree(), 3);
        assert_eq!(s.to_string(), "x' = -y + x^3; y' = x + x^2*y");
        let r = PlaneSystem::parse("xi' = theta + xi^2*theta; theta' = -1 + xi*theta^2").unwrap();
        assert_eq!(r.chart, ChartId::XiTheta);
    }

    #[test]
    fn hypothesis_violations() {
        assert_eq!(PlaneSystem::parse("x' = 0; y' = 0"), Err(SystemError::ZeroField));
        assert!(matches!(
            PlaneSystem::parse("x' = x*y; y' = x^2"),
            Err(SystemError::CommonFactor(_))
        ));
        assert!(matches!(PlaneSystem::parse("x' = x + q; y' = y"), Err(SystemError::Polynomial { .. })));
        assert!(matches!(PlaneSystem::parse("x' = x; theta' = y"), Err(SystemError::Variables(..))));
    }
}
