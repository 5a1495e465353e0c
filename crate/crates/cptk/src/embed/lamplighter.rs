//! The wreath product Sym(n) ≀ Z acting on Z by shift-with-local-relabel.
//!
//! An element is a finitely supported assignment of lamp permutations to
//! block positions plus an integer shift. Writing z = nk + r with
//! 0 ≤ r < n, the action is (α, m)·z = n(m + k) + α_{m+k}(r), displacing
//! no point by more than n(|m| + 1). The composition law is derived from
//! the requirement that acting be a homomorphism.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One element (lamps, shift) of Sym(n) ≀ Z.
/// Serializes as {"n": n, "lamps": [[pos, one-line perm], …], "shift": m}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LamplighterElement {
    pub n: u64,
    /// Block position → one-line permutation of {0, …, n-1}; identity
    /// lamps are never stored.
    #[serde(with = "lamp_pairs")]
    pub lamps: BTreeMap<i64, Vec<u32>>,
    pub shift: i64,
}

mod lamp_pairs {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<i64, Vec<u32>>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(i64, &Vec<u32>)> = map.iter().map(|(&k, v)| (k, v)).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<i64, Vec<u32>>, D::Error> {
        let pairs: Vec<(i64, Vec<u32>)> = Vec::deserialize(d)?;
        Ok(pairs.into_iter().collect())
    }
}

fn is_identity_lamp(perm: &[u32]) -> bool {
    perm.iter().enumerate().all(|(i, &v)| i as u32 == v)
}

fn compose_lamps(outer: &[u32], inner: &[u32]) -> Vec<u32> {
    inner.iter().map(|&r| outer[r as usize]).collect()
}

fn invert_lamp(perm: &[u32]) -> Vec<u32> {
    let mut inv = vec![0u32; perm.len()];
    for (i, &v) in perm.iter().enumerate() {
        inv[v as usize] = i as u32;
    }
    inv
}

impl LamplighterElement {
    pub fn identity(n: u64) -> LamplighterElement {
        LamplighterElement {
            n,
            lamps: BTreeMap::new(),
            shift: 0,
        }
    }

    pub fn shift(n: u64, m: i64) -> LamplighterElement {
        LamplighterElement {
            n,
            lamps: BTreeMap::new(),
            shift: m,
        }
    }

    /// Insert a lamp permutation, dropping identities and validating the
    /// one-line form.
    pub fn with_lamp(mut self, position: i64, perm: Vec<u32>) -> Result<LamplighterElement> {
        if perm.len() as u64 != self.n {
            return Err(Error::LamplighterArity(perm.len() as u64, self.n));
        }
        let mut seen = vec![false; perm.len()];
        for &v in &perm {
            if v as usize >= perm.len() || seen[v as usize] {
                return Err(Error::NotABijection {
                    got: perm.len(),
                    expected: perm.len(),
                });
            }
            seen[v as usize] = true;
        }
        if !is_identity_lamp(&perm) {
            self.lamps.insert(position, perm);
        }
        Ok(self)
    }

    fn lamp_at(&self, position: i64) -> Option<&Vec<u32>> {
        self.lamps.get(&position)
    }

    /// (α, m)·z = n(m + k) + α_{m+k}(r) for z = nk + r.
    pub fn act(&self, z: i64) -> i64 {
        let n = self.n as i64;
        let k = z.div_euclid(n);
        let r = z.rem_euclid(n);
        let target_block = self.shift + k;
        let r_image = match self.lamp_at(target_block) {
            Some(perm) => perm[r as usize] as i64,
            None => r,
        };
        n * target_block + r_image
    }

    /// n(|m| + 1), the displacement certificate for this element.
    pub fn displacement_bound(&self) -> u64 {
        self.n * (self.shift.unsigned_abs() + 1)
    }

    pub fn inverse(&self) -> LamplighterElement {
        let mut lamps = BTreeMap::new();
        for (&pos, perm) in &self.lamps {
            lamps.insert(pos - self.shift, invert_lamp(perm));
        }
        LamplighterElement {
            n: self.n,
            lamps,
            shift: -self.shift,
        }
    }
}

/// g ∘ h, normalized so that act(g ∘ h, z) = act(g, act(h, z)) for all z.
pub fn lamplighter_compose(
    g: &LamplighterElement,
    h: &LamplighterElement,
) -> Result<LamplighterElement> {
    if g.n != h.n {
        return Err(Error::LamplighterArity(g.n, h.n));
    }
    let n = g.n as usize;
    let identity: Vec<u32> = (0..n as u32).collect();
    let mut lamps = BTreeMap::new();
    let mut positions: Vec<i64> = g.lamps.keys().copied().collect();
    for &p in h.lamps.keys() {
        let shifted = p + g.shift;
        if !positions.contains(&shifted) {
            positions.push(shifted);
        }
    }
    positions.sort_unstable();
    for j in positions {
        let outer = g.lamp_at(j).unwrap_or(&identity);
        let inner = h.lamp_at(j - g.shift).unwrap_or(&identity);
        let combined = compose_lamps(outer, inner);
        if !is_identity_lamp(&combined) {
            lamps.insert(j, combined);
        }
    }
    Ok(LamplighterElement {
        n: g.n,
        lamps,
        shift: g.shift + h.shift,
    })
}
