use crate::error::{Error, Result};
use crate::rational::Rational;

/// Piecewise-constant radial potential keyed on squared distance in scaled
/// integer units.
///
/// `value(r2) = values[k]` for the smallest `k` with `r2 <= breakpoints[k]`,
/// and the last value beyond every breakpoint. Intervals are closed on the
/// right, so contact at a breakpoint takes the inner value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadialPotential {
    breakpoints: Vec<u128>,
    values: Vec<Rational>,
}

impl RadialPotential {
    pub fn new(breakpoints: Vec<u128>, values: Vec<Rational>) -> Result<Self> {
        if values.len() != breakpoints.len() + 1 {
            return Err(Error::input(format!(
                "potential needs {} values for {} breakpoints, got {}",
                breakpoints.len() + 1,
                breakpoints.len(),
                values.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::input("potential breakpoints must be strictly increasing"));
        }
        Ok(RadialPotential { breakpoints, values })
    }

    pub fn constant(value: Rational) -> Self {
        RadialPotential {
            breakpoints: Vec::new(),
            values: vec![value],
        }
    }

    /// Two-level step: `inside` for `r2 <= threshold`, `outside` beyond.
    pub fn step(threshold: u128, inside: Rational, outside: Rational) -> Self {
        RadialPotential {
            breakpoints: vec![threshold],
            values: vec![inside, outside],
        }
    }

    /// The conflict-counting gadget: 2 on contact or overlap, 1 otherwise.
    pub fn conflict_step(threshold: u128) -> Self {
        RadialPotential::step(threshold, Rational::integer(2), Rational::ONE)
    }

    pub fn breakpoints(&self) -> &[u128] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, squared_r: u128) -> Rational {
        let k = self.breakpoints.partition_point(|&b| b < squared_r);
        self.values[k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_boundary_is_inside() {
        let u = RadialPotential::conflict_step(1);
        assert_eq!(u.value(0), Rational::integer(2));
        assert_eq!(u.value(1), Rational::integer(2));
        assert_eq!(u.value(2), Rational::ONE);
    }

    #[test]
    fn constant_everywhere() {
        let u = RadialPotential::constant(Rational::integer(7));
        for r2 in [0, 1, 99, u128::MAX] {
            assert_eq!(u.value(r2), Rational::integer(7));
        }
    }

    #[test]
    fn multi_piece() {
        let vals = ["5", "-1", "1/2", "0"].map(|s| s.parse().unwrap()).to_vec();
        let u = RadialPotential::new(vec![4, 9, 16], vals).unwrap();
        assert_eq!(u.value(3), Rational::integer(5));
        assert_eq!(u.value(4), Rational::integer(5));
        assert_eq!(u.value(5), Rational::integer(-1));
        assert_eq!(u.value(16), "1/2".parse().unwrap());
        assert_eq!(u.value(17), Rational::ZERO);
    }

    #[test]
    fn rejects_malformed() {
        assert!(RadialPotential::new(vec![2, 2], vec![Rational::ONE; 3]).is_err());
        assert!(RadialPotential::new(vec![2], vec![Rational::ONE]).is_err());
    }
}
