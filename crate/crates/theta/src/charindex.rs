//! Theta characteristics and their flat numbering.
//!
//! A genus-3 characteristic is a pair of triples (a, b) with entries in
//! {0, 1/2}. We store each entry as its numerator over 2, i.e. `1u8` means
//! the half. The flat index is
//!
//!   i = 2(b0 + 2 b1 + 4 b2) + 16(a0 + 2 a1 + 4 a2)            (half-values)
//!     = nb0 + 2 nb1 + 4 nb2 + 8 (na0 + 2 na1 + 4 na2)          (numerators)
//!
//! so the low three bits of i hold b and the next three hold a. The
//! fundamental characteristics (a = 0) are exactly the indices 0..=7.

/// A characteristic [a; b]; entries are numerators over 2 (0 or 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaCharacteristic {
    pub a: [u8; 3],
    pub b: [u8; 3],
}

impl ThetaCharacteristic {
    pub fn index(&self) -> usize {
        theta_index(self.a, self.b)
    }

    pub fn from_index(i: usize) -> Self {
        index_to_char(i)
    }

    /// Even iff 4·a·b = Σ na_k nb_k is even; the 28 odd ones vanish at z = 0.
    pub fn is_even(&self) -> bool {
        let dot: u8 = (0..3).map(|k| self.a[k] & self.b[k]).sum();
        dot % 2 == 0
    }
}

/// Flat index of [a; b]; entries are numerators over 2 (each 0 or 1).
pub fn theta_index(a: [u8; 3], b: [u8; 3]) -> usize {
    debug_assert!(a.iter().chain(b.iter()).all(|&x| x <= 1));
    let bl = (b[0] as usize) | (b[1] as usize) << 1 | (b[2] as usize) << 2;
    let ah = (a[0] as usize) | (a[1] as usize) << 1 | (a[2] as usize) << 2;
    bl | ah << 3
}

pub fn index_to_char(i: usize) -> ThetaCharacteristic {
    assert!(i < 64, "characteristic index out of range");
    let bit = |x: usize, k: usize| ((x >> k) & 1) as u8;
    ThetaCharacteristic {
        a: [bit(i >> 3, 0), bit(i >> 3, 1), bit(i >> 3, 2)],
        b: [bit(i, 0), bit(i, 1), bit(i, 2)],
    }
}

/// Parity straight from the index: even iff popcount((i>>3) & i) is even.
pub fn index_is_even(i: usize) -> bool {
    debug_assert!(i < 64);
    (((i >> 3) & i & 0x7).count_ones()) % 2 == 0
}
