use crate::error::{Error, Result};

/// Bipartite split `C^d = C^{d_a} ⊗ C^{d_b}` of each of the three systems.
///
/// The joint basis index is a mixed-radix number over the factors
/// `(0a, 0b, 1a, 1b, 2a, 2b)`, most significant first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HilbertLayout {
    d_a: usize,
    d_b: usize,
}

impl HilbertLayout {
    pub const SYSTEMS: usize = 3;

    pub fn new(d_a: usize, d_b: usize) -> Result<Self> {
        if d_a == 0 || d_b == 0 {
            return Err(Error::InvalidLayout(format!(
                "local dimensions must be positive, got ({d_a}, {d_b})"
            )));
        }
        Ok(Self { d_a, d_b })
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    /// Dimension of a single system.
    pub fn d(&self) -> usize {
        self.d_a * self.d_b
    }

    /// `d³`
    pub fn joint_dim(&self) -> usize {
        self.d().pow(3)
    }

    pub fn alice_dim(&self) -> usize {
        self.d_a.pow(3)
    }

    pub fn bob_dim(&self) -> usize {
        self.d_b.pow(3)
    }

    pub fn factor_dims(&self) -> [usize; 6] {
        let (a, b) = (self.d_a, self.d_b);
        [a, b, a, b, a, b]
    }

    pub fn alice_factors() -> [usize; 3] {
        [0, 2, 4]
    }

    pub fn bob_factors() -> [usize; 3] {
        [1, 3, 5]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let l = HilbertLayout::new(2, 3).unwrap();
        assert_eq!(l.d(), 6);
        assert_eq!(l.joint_dim(), 216);
        assert_eq!(l.alice_dim() * l.bob_dim(), l.joint_dim());
        assert_eq!(l.factor_dims(), [2, 3, 2, 3, 2, 3]);
    }

    #[test]
    fn rejects_zero() {
        assert!(HilbertLayout::new(0, 2).is_err());
    }
}
