//! Textual code-configuration files (TOML key/value with nested lists).
//!
//! ```toml
//! b = 5
//! m = 5
//! k = 5
//! poly = 47        # x^5 + x^3 + x^2 + x + 1; bit i = coefficient of x^i
//! trusted = false
//!
//! [matrix]
//! kind = "vandermonde"
//! points = [1, 2, 3, 4, 5]
//! ```
//!
//! `kind = "cauchy"` takes `xs`/`ys` exponent lists, `kind = "explicit"` a
//! row-major `sigma` grid. An empty Vandermonde point list means the
//! standard `a_j = j` points. `trusted = true` skips the superregularity
//! check and is recorded in stripe manifests.

use crate::code::{build_code, CodeParams};
use crate::field::PrimitivePolynomial;
use crate::matrix::MatrixSpec;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeConfigFile {
    pub b: u32,
    pub m: usize,
    pub k: usize,
    pub poly: u32,
    #[serde(default)]
    pub trusted: bool,
    pub matrix: MatrixSpec,
}

impl CodeConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Validates primitivity and (unless trusted) superregularity.
    pub fn to_params(&self) -> Result<CodeParams> {
        build_code(
            self.b,
            self.m,
            self.k,
            PrimitivePolynomial::new(self.poly)?,
            self.matrix.clone(),
            self.trusted,
        )
    }

    /// Normalized form of a built code: explicit evaluation points, reduced
    /// exponents.
    pub fn from_params(params: &CodeParams) -> Self {
        CodeConfigFile {
            b: params.b(),
            m: params.m(),
            k: params.k(),
            poly: params.poly().bits(),
            trusted: params.trusted(),
            matrix: params.spec().clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_build_vandermonde() {
        let text = r#"
b = 5
m = 5
k = 5
poly = 47

[matrix]
kind = "vandermonde"
points = [1, 2, 3, 4, 5]
"#;
        let cfg = CodeConfigFile::parse(text).unwrap();
        assert!(!cfg.trusted);
        let params = cfg.to_params().unwrap();
        assert_eq!(params.n(), 10);
        assert_eq!(params.matrix().sigma(5, 5), 20);
    }

    #[test]
    fn empty_points_default_to_standard() {
        let text = r#"
b = 3
m = 2
k = 2
poly = 13

[matrix]
kind = "vandermonde"
points = []
"#;
        let params = CodeConfigFile::parse(text).unwrap().to_params().unwrap();
        assert_eq!(params.matrix().sigma(2, 2), 2);
    }

    #[test]
    fn cauchy_and_explicit_round_trip() {
        for text in [
            r#"
b = 4
m = 4
k = 4
poly = 25

[matrix]
kind = "cauchy"
xs = [12, 1, 0, 7]
ys = [5, 10, 3, 14]
"#,
            r#"
b = 3
m = 2
k = 2
poly = 13
trusted = true

[matrix]
kind = "explicit"
sigma = [[0, 0], [1, 2]]
"#,
        ] {
            let cfg = CodeConfigFile::parse(text).unwrap();
            let params = cfg.to_params().unwrap();
            let normalized = CodeConfigFile::from_params(&params);
            let reparsed = CodeConfigFile::parse(&normalized.to_toml()).unwrap();
            assert_eq!(reparsed.matrix, cfg.matrix);
            assert_eq!(reparsed.poly, cfg.poly);
        }
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(matches!(
            CodeConfigFile::parse("b = 3"),
            Err(Error::Config(_))
        ));
        // non-primitive polynomial surfaces as NotPrimitive from to_params
        let text = r#"
b = 4
m = 2
k = 2
poly = 31

[matrix]
kind = "vandermonde"
points = [1, 2]
"#;
        let cfg = CodeConfigFile::parse(text).unwrap();
        assert!(matches!(cfg.to_params(), Err(Error::NotPrimitive)));
        // duplicate evaluation points
        let text = r#"
b = 3
m = 2
k = 2
poly = 13

[matrix]
kind = "vandermonde"
points = [3, 10]
"#;
        let cfg = CodeConfigFile::parse(text).unwrap();
        assert!(matches!(
            cfg.to_params(),
            Err(Error::DuplicateEvaluationPoint)
        ));
    }
}
