//! Dihedral symmetries of a permutation viewed as a 0-1 matrix.
//!
//! Each symmetry is stored as an element of the dihedral group of the square
//! acting on the points `(i, w_i)`: an optional swap of the two coordinates
//! followed by optional reflections `x ↦ n+1-x` and `y ↦ n+1-y`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymmetryOp {
    Identity,
    Complement,
    Reversal,
    Rotate180,
    Inverse,
    RotatedInverse,
    /// Complement ∘ Inverse.
    Rotate90,
    /// Inverse ∘ Complement.
    Rotate270,
}

/// The five involutions used for the 25 standard Foatic maps.
pub const INVOLUTIONS: [SymmetryOp; 5] = [
    SymmetryOp::Complement,
    SymmetryOp::Reversal,
    SymmetryOp::Rotate180,
    SymmetryOp::Inverse,
    SymmetryOp::RotatedInverse,
];

/// Involutions plus both quarter turns: the 49-action generator set.
pub const EXTENDED: [SymmetryOp; 7] = [
    SymmetryOp::Complement,
    SymmetryOp::Reversal,
    SymmetryOp::Rotate180,
    SymmetryOp::Inverse,
    SymmetryOp::RotatedInverse,
    SymmetryOp::Rotate90,
    SymmetryOp::Rotate270,
];

pub const ALL: [SymmetryOp; 8] = [
    SymmetryOp::Identity,
    SymmetryOp::Complement,
    SymmetryOp::Reversal,
    SymmetryOp::Rotate180,
    SymmetryOp::Inverse,
    SymmetryOp::RotatedInverse,
    SymmetryOp::Rotate90,
    SymmetryOp::Rotate270,
];

#[derive(Clone, Copy, PartialEq, Eq)]
struct Dihedral {
    swap: bool,
    flip_x: bool,
    flip_y: bool,
}

impl SymmetryOp {
    fn dihedral(self) -> Dihedral {
        let (swap, flip_x, flip_y) = match self {
            SymmetryOp::Identity => (false, false, false),
            SymmetryOp::Complement => (false, false, true),
            SymmetryOp::Reversal => (false, true, false),
            SymmetryOp::Rotate180 => (false, true, true),
            SymmetryOp::Inverse => (true, false, false),
            SymmetryOp::RotatedInverse => (true, true, true),
            SymmetryOp::Rotate90 => (true, false, true),
            SymmetryOp::Rotate270 => (true, true, false),
        };
        Dihedral {
            swap,
            flip_x,
            flip_y,
        }
    }

    fn from_dihedral(d: Dihedral) -> Self {
        *ALL.iter()
            .find(|op| op.dihedral() == d)
            .expect("all eight dihedral elements are named")
    }

    /// Short name used on the command line and in dump headers.
    pub fn name(self) -> &'static str {
        match self {
            SymmetryOp::Identity => "id",
            SymmetryOp::Complement => "C",
            SymmetryOp::Reversal => "R",
            SymmetryOp::Rotate180 => "rot",
            SymmetryOp::Inverse => "I",
            SymmetryOp::RotatedInverse => "D",
            SymmetryOp::Rotate90 => "Q",
            SymmetryOp::Rotate270 => "Q3",
        }
    }

    pub fn is_involution(self) -> bool {
        !matches!(
            self,
            SymmetryOp::Identity | SymmetryOp::Rotate90 | SymmetryOp::Rotate270
        )
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: SymmetryOp) -> SymmetryOp {
        let a = self.dihedral();
        let b = other.dihedral();
        // moving b's reflections past a's swap exchanges their axes
        let (bx, by) = if a.swap {
            (b.flip_y, b.flip_x)
        } else {
            (b.flip_x, b.flip_y)
        };
        Self::from_dihedral(Dihedral {
            swap: a.swap ^ b.swap,
            flip_x: a.flip_x ^ bx,
            flip_y: a.flip_y ^ by,
        })
    }

    pub fn inverse(self) -> SymmetryOp {
        *ALL.iter()
            .find(|&&op| self.compose(op) == SymmetryOp::Identity)
            .expect("dihedral group is closed under inverses")
    }

    pub fn apply(self, w: &Permutation) -> Permutation {
        let mut out = vec![0; w.degree()];
        self.apply_into(w.word(), &mut out);
        Permutation::from_word_unchecked(out)
    }

    /// Applies the symmetry to a one-line word, writing into `out`.
    pub fn apply_into(self, word: &[u8], out: &mut [u8]) {
        let n1 = word.len() as u8 + 1;
        match self {
            SymmetryOp::Identity => out.copy_from_slice(word),
            SymmetryOp::Complement => {
                for (o, &v) in out.iter_mut().zip(word) {
                    *o = n1 - v;
                }
            }
            SymmetryOp::Reversal => {
                for (o, &v) in out.iter_mut().zip(word.iter().rev()) {
                    *o = v;
                }
            }
            SymmetryOp::Rotate180 => {
                for (o, &v) in out.iter_mut().zip(word.iter().rev()) {
                    *o = n1 - v;
                }
            }
            _ => {
                let d = self.dihedral();
                for (i, &v) in word.iter().enumerate() {
                    let (mut x, mut y) = (i as u8 + 1, v);
                    if d.swap {
                        std::mem::swap(&mut x, &mut y);
                    }
                    if d.flip_x {
                        x = n1 - x;
                    }
                    if d.flip_y {
                        y = n1 - y;
                    }
                    out[x as usize - 1] = y;
                }
            }
        }
    }
}

impl fmt::Display for SymmetryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SymmetryOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL.iter()
            .copied()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::UnknownSymmetry(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SymmetryOp::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn worked_example_images() {
        let w = p("361458972");
        assert_eq!(Complement.apply(&w), p("749652138"));
        assert_eq!(Reversal.apply(&w), p("279854163"));
        assert_eq!(Rotate180.apply(&w), p("831256947"));
        assert_eq!(Inverse.apply(&w), p("391452867"));
        assert_eq!(RotatedInverse.apply(&w), p("342856917"));
        assert_eq!(Rotate90.apply(&w), p("719658243"));
        assert_eq!(Rotate270.apply(&Rotate90.apply(&w)), w);
    }

    #[test]
    fn involutions_square_to_identity() {
        let w = p("42135");
        for op in INVOLUTIONS {
            assert_eq!(op.apply(&op.apply(&w)), w, "{op}");
            assert_eq!(op.compose(op), Identity);
        }
    }

    #[test]
    fn names_round_trip() {
        for op in ALL {
            assert_eq!(op.name().parse::<SymmetryOp>().unwrap(), op);
        }
        assert!("r".parse::<SymmetryOp>().is_err());
    }

    #[test]
    fn composition_table_matches_action() {
        for a in ALL {
            for b in ALL {
                let c = a.compose(b);
                for w in Permutation::all(4).unwrap() {
                    assert_eq!(c.apply(&w), a.apply(&b.apply(&w)), "{a}∘{b}");
                }
            }
        }
    }
}
