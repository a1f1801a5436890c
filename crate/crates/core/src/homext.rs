//! Hom and Ext^d dimensions between indecomposables, and the middle terms
//! of the minimal non-trivial d-extension.

use serde::Serialize;

use crate::combinatorics::{squig_tau_unchecked, squig_unchecked, OsTuple, TupleUniverse};
use crate::error::{Error, Result};

/// Layers `Z_1, ..., Z_d` of the minimal d-extension
/// `0 -> M_x -> E_1 -> ... -> E_d -> M_y -> 0`, with `E_k` the sum of `M_z`
/// over `z` in `Z_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionMiddleTerms {
    pub source: OsTuple,
    pub target: OsTuple,
    pub layers: Vec<Vec<OsTuple>>,
}

/// `dim Hom(M_x, M_y)`.
pub fn hom_dim(x: &OsTuple, y: &OsTuple, u: &TupleUniverse) -> Result<u8> {
    u.require(x)?;
    u.require(y)?;
    Ok(u8::from(squig_unchecked(x, y)))
}

/// `dim Ext^d(M_y, M_x)`: one exactly when `x ~> tau_d(y)`.
pub fn ext_dim(y: &OsTuple, x: &OsTuple, u: &TupleUniverse) -> Result<u8> {
    u.require(x)?;
    u.require(y)?;
    Ok(u8::from(squig_tau_unchecked(x, y)))
}

/// Middle terms of the extension with end terms `M_x` (left) and `M_y`
/// (right).
///
/// Layer `k` collects the universe members that agree with `y` in exactly
/// `k` coordinates and with `x` in the rest. Since `x ~> tau_d(y)` forces
/// `x_i < y_i` for every `i`, each mixture has a unique choice vector.
pub fn ext_middle_terms(
    x: &OsTuple,
    y: &OsTuple,
    u: &TupleUniverse,
) -> Result<ExtensionMiddleTerms> {
    if ext_dim(y, x, u)? == 0 {
        return Err(Error::Usage(format!(
            "Ext^d(M_{y}, M_{x}) = 0, so there is no non-trivial extension"
        )));
    }
    let d = u.d();
    let (ix, iy) = (u.require(x)?, u.require(y)?);
    let mut mixes = u.empty_set();
    u.mixtures_into(ix, iy, &mut mixes);
    let mut layers = vec![Vec::new(); d];
    for p in mixes.iter() {
        let z = u.tuple(p);
        let k = z.iter().zip(y.iter()).filter(|(a, b)| a == b).count();
        if (1..=d).contains(&k) {
            layers[k - 1].push(z.clone());
        }
    }
    Ok(ExtensionMiddleTerms {
        source: x.clone(),
        target: y.clone(),
        layers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{build_universe, leq, Context};

    fn t(v: &[i32]) -> OsTuple {
        OsTuple::new(v.iter().copied()).unwrap()
    }

    /// Independent route: every one of the 2^(d+1) choice vectors, kept when
    /// the result is a universe member.
    fn brute_layers(x: &[i32], y: &[i32], u: &TupleUniverse) -> Vec<Vec<OsTuple>> {
        let d = x.len() - 1;
        let mut layers = vec![std::collections::BTreeSet::new(); d + 2];
        for mask in 0u32..(1 << (d + 1)) {
            let z: Vec<i32> = (0..=d)
                .map(|i| if mask >> i & 1 == 1 { y[i] } else { x[i] })
                .collect();
            if u.position(&z).is_some() {
                let k = mask.count_ones() as usize;
                layers[k].insert(t(&z));
            }
        }
        layers[1..=d]
            .iter()
            .map(|s| s.iter().cloned().collect())
            .collect()
    }

    #[test]
    fn hom_examples() {
        let u = build_universe(&Context::auslander(3, 2).unwrap()).unwrap();
        assert_eq!(hom_dim(&t(&[0, 1, 2]), &t(&[0, 1, 2]), &u).unwrap(), 1);
        assert_eq!(hom_dim(&t(&[0, 0, 1]), &t(&[0, 1, 2]), &u).unwrap(), 1);
        assert_eq!(hom_dim(&t(&[1, 1, 1]), &t(&[0, 0, 0]), &u).unwrap(), 0);
        assert!(matches!(
            hom_dim(&t(&[0, 0, 3]), &t(&[0, 0, 0]), &u),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn ext_examples() {
        let u = build_universe(&Context::auslander(3, 2).unwrap()).unwrap();
        for x in u.tuples() {
            assert_eq!(ext_dim(x, x, &u).unwrap(), 0);
        }
        assert_eq!(ext_dim(&t(&[1, 1, 1]), &t(&[0, 0, 0]), &u).unwrap(), 1);
        assert_eq!(ext_dim(&t(&[1, 1, 1]), &t(&[0, 1, 1]), &u).unwrap(), 0);
    }

    #[test]
    fn middle_terms_examples() {
        let u = build_universe(&Context::auslander(3, 2).unwrap()).unwrap();
        let m = ext_middle_terms(&t(&[0, 0, 0]), &t(&[1, 1, 1]), &u).unwrap();
        assert_eq!(m.layers, vec![vec![t(&[0, 0, 1])], vec![t(&[0, 1, 1])]]);

        let u1 = build_universe(&Context::auslander(3, 1).unwrap()).unwrap();
        let m = ext_middle_terms(&t(&[0, 1]), &t(&[1, 2]), &u1).unwrap();
        assert_eq!(m.layers, vec![vec![t(&[0, 2]), t(&[1, 1])]]);

        assert!(matches!(
            ext_middle_terms(&t(&[1, 1, 1]), &t(&[0, 0, 0]), &u),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn nakayama_filter_drops_long_mixtures() {
        let ell = [1u32, 2, 2, 3];
        let c = Context::nakayama_a(ell.to_vec(), 2).unwrap();
        let u = build_universe(&c).unwrap();
        let big = build_universe(&Context::auslander(4, 2).unwrap()).unwrap();
        let mut excluded = Vec::new();
        for x in u.tuples() {
            for y in u.tuples() {
                if ext_dim(y, x, &u).unwrap() == 0 {
                    continue;
                }
                let small = ext_middle_terms(x, y, &u).unwrap();
                let full = ext_middle_terms(x, y, &big).unwrap();
                assert_eq!(small.layers, brute_layers(x, y, &u));
                for (k, layer) in full.layers.iter().enumerate() {
                    for z in layer {
                        if !small.layers[k].contains(z) {
                            assert!(crate::combinatorics::loewy_length(z) > ell[z.last() as usize] as i64);
                            excluded.push((x.clone(), y.clone(), z.clone()));
                        }
                    }
                }
            }
        }
        // 011 ~> tau(122), and the mixture 022 has Loewy length 3 > l_2 = 2.
        assert!(!excluded.is_empty());
        assert!(excluded.contains(&(t(&[0, 1, 1]), t(&[1, 2, 2]), t(&[0, 2, 2]))));
    }

    #[test]
    fn layers_match_brute_force_and_order_bounds() {
        for (n, d) in [(3, 1), (4, 1), (3, 2), (4, 2), (3, 3), (5, 2), (3, 4), (2, 6)] {
            let u = build_universe(&Context::auslander(n, d).unwrap()).unwrap();
            for x in u.tuples() {
                for y in u.tuples() {
                    if ext_dim(y, x, &u).unwrap() == 0 {
                        continue;
                    }
                    let m = ext_middle_terms(x, y, &u).unwrap();
                    assert_eq!(m.layers, brute_layers(x, y, &u));
                    let mut seen = std::collections::HashSet::new();
                    assert!(seen.insert(x.clone()) && seen.insert(y.clone()));
                    for (k, layer) in m.layers.iter().enumerate() {
                        assert!(
                            layer.len() as u128
                                <= crate::combinatorics::binomial(d as u64 + 1, k as u64 + 1)
                        );
                        for z in layer {
                            assert!(seen.insert(z.clone()));
                            assert!(leq(x, z).unwrap() && leq(z, y).unwrap());
                        }
                    }
                    if d == 1 {
                        let two = y[0] <= x[1];
                        assert_eq!(m.layers[0].len(), if two { 2 } else { 1 });
                    }
                }
            }
        }
    }
}
