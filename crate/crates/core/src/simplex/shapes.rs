//! The finite shapes through which the Kan extensions over `Δ[n]` are evaluated.

use super::{MonotoneMap, SimplexObj};
use crate::error::{Error, Result};

/// `⟨[q], s*f⟩ <- ⟨[q-p], const_l⟩ -> ⟨[m-p], t*f⟩` for `f^{-1}(l) = {p..q}`.
/// Each arrow is stored as the monotone map between sources.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VDiagram {
    pub p: usize,
    pub q: usize,
    pub left: SimplexObj,
    pub middle: SimplexObj,
    pub right: SimplexObj,
    pub middle_to_left: MonotoneMap,
    pub middle_to_right: MonotoneMap,
    pub left_to_obj: MonotoneMap,
    pub right_to_obj: MonotoneMap,
}

pub fn v_diagram(f: &SimplexObj, l: usize) -> Result<VDiagram> {
    let (p, q) = f
        .preimage(l)
        .ok_or_else(|| Error::Precondition(format!("{l} is not in the image of {f:?}")))?;
    let m = f.src_dim();
    let left = f.restrict(0, q);
    let middle = f.restrict(p, q);
    let right = f.restrict(p, m);
    Ok(VDiagram {
        p,
        q,
        middle_to_left: MonotoneMap::of((p..=q).collect(), q),
        middle_to_right: MonotoneMap::of((0..=q - p).collect(), m - p),
        left_to_obj: MonotoneMap::s_embed(q, m),
        right_to_obj: MonotoneMap::t_embed(p, m),
        left,
        middle,
        right,
    })
}

/// A tight factorization `[m] -e-> [m+k+1] -obj-> [n]` whose inserted block
/// `j..=j+k` is the preimage of `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightFactorization {
    pub k: usize,
    pub j: usize,
    pub obj: SimplexObj,
    pub e: MonotoneMap,
}

fn tight(f: &SimplexObj, l: usize, j: usize, k: usize) -> TightFactorization {
    let m = f.src_dim();
    let mut values = f.values()[..j].to_vec();
    values.extend(std::iter::repeat(l).take(k + 1));
    values.extend_from_slice(&f.values()[j..]);
    let e = (0..=m).map(|i| if i < j { i } else { i + k + 1 }).collect();
    TightFactorization { k, j, obj: MonotoneMap::of(values, f.dst_dim()), e: MonotoneMap::of(e, m + k + 1) }
}

/// Tight factorizations for `k = 0..=k_max`. There is exactly one per `k`:
/// the block must sit where `l` fits in the order.
pub fn tight_factorizations(f: &SimplexObj, l: usize, k_max: usize) -> Result<Vec<TightFactorization>> {
    if f.preimage(l).is_some() {
        return Err(Error::Precondition(format!("{l} is in the image of {f:?}")));
    }
    if l > f.dst_dim() {
        return Err(Error::Precondition(format!("{l} is not a vertex of [{}]", f.dst_dim())));
    }
    let j = f.values().iter().filter(|&&v| v < l).count();
    Ok((0..=k_max).map(|k| tight(f, l, j, k)).collect())
}

impl TightFactorization {
    /// `ν(θ)` for `θ: [k] -> [k']`: the arrow `self -> other` that is `θ` on the block.
    pub fn nu(&self, theta: &MonotoneMap, other: &TightFactorization) -> MonotoneMap {
        assert_eq!(theta.src_dim(), self.k);
        assert_eq!(theta.dst_dim(), other.k);
        let n = self.obj.src_dim();
        let values = (0..=n)
            .map(|i| {
                if i < self.j {
                    i
                } else if i <= self.j + self.k {
                    other.j + theta.apply(i - self.j)
                } else {
                    i - self.k + other.k
                }
            })
            .collect();
        MonotoneMap::of(values, other.obj.src_dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mm(v: &[usize], n: usize) -> MonotoneMap {
        MonotoneMap::of(v.to_vec(), n)
    }

    #[test]
    fn v_diagram_examples() {
        let v = v_diagram(&MonotoneMap::identity(2), 1).unwrap();
        assert_eq!((v.p, v.q), (1, 1));
        assert_eq!(v.left, mm(&[0, 1], 2));
        assert_eq!(v.middle, mm(&[1], 2));
        assert_eq!(v.right, mm(&[1, 2], 2));
        let c = MonotoneMap::constant(2, 2, 1);
        let v = v_diagram(&c, 1).unwrap();
        assert_eq!(v.left, c);
        assert_eq!(v.right, c);
        let f = mm(&[0, 1, 1, 2], 2);
        let v = v_diagram(&f, 1).unwrap();
        assert_eq!((v.p, v.q), (1, 2));
        assert!(v_diagram(&mm(&[0, 2], 2), 1).is_err());
    }

    #[test]
    fn v_diagram_commutes() {
        for m in 0..=3 {
            for f in MonotoneMap::all(m, 2) {
                let Ok(v) = v_diagram(&f, 1) else { continue };
                assert_eq!(v.left.after(&v.middle_to_left), v.middle);
                assert_eq!(v.right.after(&v.middle_to_right), v.middle);
                assert_eq!(f.after(&v.left_to_obj), v.left);
                assert_eq!(f.after(&v.right_to_obj), v.right);
                assert_eq!(v.left_to_obj.after(&v.middle_to_left), v.right_to_obj.after(&v.middle_to_right));
            }
        }
    }

    #[test]
    fn tight_factorization_examples() {
        let long = mm(&[0, 2], 2);
        let t = tight_factorizations(&long, 1, 1).unwrap();
        assert_eq!(t[0].obj, MonotoneMap::identity(2));
        assert_eq!(t[1].obj, mm(&[0, 1, 1, 2], 2));
        for tf in &t {
            assert!(tf.e.is_injective());
            assert_eq!(tf.obj.after(&tf.e), long);
        }
        // ν is a functor on the block and commutes with e
        for a in 0..=1 {
            for b in 0..=1 {
                for theta in MonotoneMap::all(a, b) {
                    let nu = t[a].nu(&theta, &t[b]);
                    assert_eq!(t[b].obj.after(&nu), t[a].obj);
                    assert_eq!(nu.after(&t[a].e), t[b].e);
                }
            }
        }
        assert!(tight_factorizations(&MonotoneMap::identity(2), 1, 1).is_err());
    }
}
