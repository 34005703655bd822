use std::ops::Neg;

use crate::error::{Error, Result};

/// A 3-velocity in units of c. Always strictly subluminal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Velocity3([f64; 3]);

impl Velocity3 {
    pub const ZERO: Velocity3 = Velocity3([0.0; 3]);

    pub fn new(vx: f64, vy: f64, vz: f64) -> Result<Self> {
        Self::from_array([vx, vy, vz])
    }

    pub fn from_array(v: [f64; 3]) -> Result<Self> {
        if v.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain("velocity components must be finite"));
        }
        let speed = norm(&v);
        if speed >= 1.0 {
            return Err(Error::Superluminal(speed));
        }
        Ok(Velocity3(v))
    }

    /// Velocity of magnitude `speed` along `direction` (need not be normalized).
    pub fn along(direction: [f64; 3], speed: f64) -> Result<Self> {
        let n = norm(&direction);
        if n == 0.0 {
            return if speed == 0.0 {
                Ok(Self::ZERO)
            } else {
                Err(Error::domain("direction must be non-zero"))
            };
        }
        Self::from_array(direction.map(|c| c * speed / n))
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    pub fn x(&self) -> f64 {
        self.0[0]
    }

    pub fn y(&self) -> f64 {
        self.0[1]
    }

    pub fn z(&self) -> f64 {
        self.0[2]
    }

    pub fn speed_squared(&self) -> f64 {
        dot(&self.0, &self.0)
    }

    pub fn speed(&self) -> f64 {
        norm(&self.0)
    }

    pub fn gamma(&self) -> f64 {
        gamma_from_speed_squared(self.speed_squared())
    }

    /// γ − 1 evaluated as β²γ²/(γ + 1), which keeps full relative precision
    /// when β is tiny.
    pub fn gamma_minus_one(&self) -> f64 {
        gamma_minus_one_from_speed_squared(self.speed_squared())
    }

    pub fn rapidity(&self) -> f64 {
        self.speed().atanh()
    }

    /// Unit direction, or `None` at rest.
    pub fn direction(&self) -> Option<[f64; 3]> {
        let s = self.speed();
        (s > 0.0).then(|| self.0.map(|c| c / s))
    }

    pub fn dot(&self, other: &Velocity3) -> f64 {
        dot(&self.0, &other.0)
    }
}

impl Neg for Velocity3 {
    type Output = Velocity3;

    fn neg(self) -> Velocity3 {
        Velocity3(self.0.map(|c| -c))
    }
}

pub(crate) fn gamma_from_speed_squared(b2: f64) -> f64 {
    1.0 / (1.0 - b2).sqrt()
}

pub(crate) fn gamma_minus_one_from_speed_squared(b2: f64) -> f64 {
    let g = gamma_from_speed_squared(b2);
    b2 * g * g / (g + 1.0)
}

pub(crate) fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn norm(a: &[f64; 3]) -> f64 {
    a[0].hypot(a[1]).hypot(a[2])
}

pub(crate) fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_superluminal_and_luminal() {
        assert!(matches!(
            Velocity3::new(1.0, 0.0, 0.0),
            Err(Error::Superluminal(_))
        ));
        assert!(matches!(
            Velocity3::new(0.8, 0.8, 0.0),
            Err(Error::Superluminal(_))
        ));
        assert!(Velocity3::new(f64::NAN, 0.0, 0.0).is_err());
        assert!(Velocity3::new(0.999_999, 0.0, 0.0).is_ok());
    }

    #[test]
    fn gamma_of_half_c() {
        let v = Velocity3::new(0.5, 0.0, 0.0).unwrap();
        assert!((v.gamma() - 1.154_700_538_379_251_5).abs() < 1e-15);
        assert!((v.gamma_minus_one() - 0.154_700_538_379_251_5).abs() < 1e-15);
    }

    #[test]
    fn gamma_minus_one_keeps_precision_at_thermal_speeds() {
        let beta = 2.0e3 / crate::SPEED_OF_LIGHT;
        let v = Velocity3::new(beta, 0.0, 0.0).unwrap();
        // series: β²/2 + 3β⁴/8 + 5β⁶/16
        let b2 = beta * beta;
        let series = b2 / 2.0 + 3.0 * b2 * b2 / 8.0 + 5.0 * b2 * b2 * b2 / 16.0;
        assert!((v.gamma_minus_one() / series - 1.0).abs() < 1e-14);
        // naive form loses most digits
        let naive = v.gamma() - 1.0;
        assert!((naive / series - 1.0).abs() > 1e-9);
    }

    #[test]
    fn along_normalizes_direction() {
        let v = Velocity3::along([0.0, 3.0, 4.0], 0.5).unwrap();
        assert!((v.speed() - 0.5).abs() < 1e-15);
        assert!((v.y() - 0.3).abs() < 1e-15);
        assert_eq!(Velocity3::along([0.0; 3], 0.0).unwrap(), Velocity3::ZERO);
        assert!(Velocity3::along([0.0; 3], 0.1).is_err());
    }
}
