use num_complex::Complex64;
use serde_json::json;

/// One evaluation of `dist(z, spec A) ||(A - z)^{-1}||` against a constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub z: Complex64,
    pub dist_to_spectrum: f64,
    pub resolvent_norm: f64,
    pub ratio: f64,
    pub constant: f64,
    /// `constant - ratio`.
    pub slack: f64,
    pub satisfied: bool,
}

impl BoundReport {
    pub fn new(n: usize, z: Complex64, dist: f64, resolvent_norm: f64, constant: f64, tol: f64) -> Self {
        let ratio = dist * resolvent_norm;
        BoundReport {
            n,
            z,
            dist_to_spectrum: dist,
            resolvent_norm,
            ratio,
            constant,
            slack: constant - ratio,
            satisfied: ratio <= constant + tol,
        }
    }

    pub fn to_json(&self, seed: u64, construction: &str) -> serde_json::Value {
        json!({
            "n": self.n,
            "z_re": self.z.re,
            "z_im": self.z.im,
            "dist": self.dist_to_spectrum,
            "resolvent_norm": self.resolvent_norm,
            "ratio": self.ratio,
            "constant": self.constant,
            "slack": self.slack,
            "satisfied": self.satisfied,
            "seed": seed,
            "construction": construction,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_and_slack() {
        let r = BoundReport::new(3, Complex64::new(1.0, 0.0), 0.5, 4.0, 2.0, 1e-8);
        assert_eq!(r.ratio, 2.0);
        assert_eq!(r.slack, 0.0);
        assert!(r.satisfied);
        let r = BoundReport::new(3, Complex64::new(1.0, 0.0), 0.5, 4.1, 2.0, 1e-8);
        assert!(!r.satisfied);
    }

    #[test]
    fn json_keys() {
        let r = BoundReport::new(2, Complex64::new(0.0, 1.0), 1.0, 1.0, 2.0, 1e-8);
        let v = r.to_json(9, "ginibre-scaled");
        for key in ["n", "z_re", "z_im", "dist", "resolvent_norm", "ratio", "constant", "slack", "satisfied", "seed", "construction"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}
