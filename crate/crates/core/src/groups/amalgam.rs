use std::sync::Arc;

use serde_json::Value;

use crate::fsa::{Alphabet, Dfa, Letter, Word};

use super::finite::FiniteGroupTable;
use super::GroupError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    K,
    G,
    H,
}

/// A generator of `G *_K H`: a nontrivial element of `K`, or an element of
/// `G` or `H` outside the amalgamated subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AmalgamLetter {
    pub factor: Factor,
    pub element: usize,
}

/// Canonical form `(k; t_1, ..., t_n)` with `t_i` nontrivial right coset
/// representatives alternating between `G` and `H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AmalgamNormalForm {
    pub k: usize,
    pub seq: Vec<(Factor, usize)>,
}

#[derive(Clone, Debug)]
struct Side {
    table: Arc<FiniteGroupTable>,
    embed: Vec<usize>,
    /// per element: (K preimage of the K-part, coset representative)
    split: Vec<(usize, usize)>,
    transversal: Vec<usize>,
}

impl Side {
    fn new(table: Arc<FiniteGroupTable>, k: &FiniteGroupTable, embed: Vec<usize>, label: &str) -> Result<Self, GroupError> {
        let bad = |msg: String| GroupError::Amalgam(format!("embed_{label}: {msg}"));
        if embed.len() != k.order() {
            return Err(bad(format!("needs {} images, found {}", k.order(), embed.len())));
        }
        for (i, &x) in embed.iter().enumerate() {
            if x >= table.order() {
                return Err(bad(format!("image of {} out of range", k.name(i))));
            }
            if embed[..i].contains(&x) {
                return Err(bad("not injective".into()));
            }
        }
        for a in 0..k.order() {
            for b in 0..k.order() {
                if table.mul(embed[a], embed[b]) != embed[k.mul(a, b)] {
                    return Err(bad(format!("not a homomorphism at ({}, {})", k.name(a), k.name(b))));
                }
            }
        }
        let n = table.order();
        let mut pre = vec![usize::MAX; n];
        for (i, &x) in embed.iter().enumerate() {
            pre[x] = i;
        }
        // right cosets Kx; representative = identity for K, else least index
        let mut rep = vec![usize::MAX; n];
        let mut transversal = vec![table.identity()];
        for &x in &embed {
            rep[x] = table.identity();
        }
        for x in 0..n {
            if rep[x] != usize::MAX {
                continue;
            }
            transversal.push(x);
            for &kk in &embed {
                rep[table.mul(kk, x)] = x;
            }
        }
        let split = (0..n)
            .map(|y| {
                let t = rep[y];
                let kpart = table.mul(y, table.inv(t));
                (pre[kpart], t)
            })
            .collect();
        Ok(Self { table, embed, split, transversal })
    }
}

/// `G *_K H` for finite `G`, `H` and common subgroup `K`.
#[derive(Clone, Debug)]
pub struct AmalgamSpec {
    k: Arc<FiniteGroupTable>,
    g: Side,
    h: Side,
    letters: Vec<AmalgamLetter>,
    alphabet: Arc<Alphabet>,
}

impl AmalgamSpec {
    pub fn new(
        g: Arc<FiniteGroupTable>,
        h: Arc<FiniteGroupTable>,
        k: Arc<FiniteGroupTable>,
        embed_g: Vec<usize>,
        embed_h: Vec<usize>,
    ) -> Result<Self, GroupError> {
        let gs = Side::new(g, &k, embed_g, "g")?;
        let hs = Side::new(h, &k, embed_h, "h")?;
        let mut letters = Vec::new();
        let mut names = Vec::new();
        for x in 0..k.order() {
            if x != k.identity() {
                letters.push(AmalgamLetter { factor: Factor::K, element: x });
                names.push(format!("k:{}", k.name(x)));
            }
        }
        for (side, factor, tag) in [(&gs, Factor::G, "g"), (&hs, Factor::H, "h")] {
            for x in 0..side.table.order() {
                if !side.embed.contains(&x) {
                    letters.push(AmalgamLetter { factor, element: x });
                    names.push(format!("{tag}:{}", side.table.name(x)));
                }
            }
        }
        let inverse_of = |l: &AmalgamLetter| -> AmalgamLetter {
            let t = match l.factor {
                Factor::K => &k,
                Factor::G => &gs.table,
                Factor::H => &hs.table,
            };
            AmalgamLetter { factor: l.factor, element: t.inv(l.element) }
        };
        let alpha_letters = letters
            .iter()
            .enumerate()
            .map(|(id, l)| Letter {
                id,
                name: names[id].clone(),
                vertex: Some(l.factor as usize),
                inverse: letters.iter().position(|m| *m == inverse_of(l)),
            })
            .collect();
        let alphabet = Arc::new(Alphabet::new(alpha_letters).map_err(|e| GroupError::Amalgam(e.to_string()))?);
        Ok(Self { k, g: gs, h: hs, letters, alphabet })
    }

    /// Parse `{"type":"amalgam","g":..,"h":..,"k":..,"embed_g":[..],"embed_h":[..]}`.
    /// Groups are built-in names or table objects; embeddings list the image of
    /// each element of `K` (by index or name).
    pub fn from_json(v: &Value) -> Result<Self, GroupError> {
        let obj = v.as_object().ok_or_else(|| GroupError::Amalgam("spec must be an object".into()))?;
        let group = |key: &str| -> Result<Arc<FiniteGroupTable>, GroupError> {
            let gv = obj.get(key).ok_or_else(|| GroupError::Amalgam(format!("missing field {key:?}")))?;
            super::table_from_json(gv).map(Arc::new).map_err(|e| e.at(key))
        };
        let (g, h, k) = (group("g")?, group("h")?, group("k")?);
        let embed = |key: &str, target: &FiniteGroupTable| -> Result<Vec<usize>, GroupError> {
            let arr = obj
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| GroupError::Amalgam(format!("missing array {key:?}")))?;
            arr.iter()
                .enumerate()
                .map(|(i, x)| match x {
                    Value::Number(n) => n.as_u64().map(|n| n as usize),
                    Value::String(s) => target.element(s),
                    _ => None,
                }
                .ok_or_else(|| GroupError::Amalgam(format!("{key}[{i}]: not an element of the target group"))))
                .collect()
        };
        let eg = embed("embed_g", &g)?;
        let eh = embed("embed_h", &h)?;
        Self::new(g, h, k, eg, eh)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn letters(&self) -> &[AmalgamLetter] {
        &self.letters
    }

    pub fn k(&self) -> &FiniteGroupTable {
        &self.k
    }

    pub fn transversal(&self, f: Factor) -> &[usize] {
        match f {
            Factor::G => &self.g.transversal,
            Factor::H => &self.h.transversal,
            Factor::K => &[],
        }
    }

    fn side(&self, f: Factor) -> &Side {
        match f {
            Factor::G => &self.g,
            Factor::H => &self.h,
            Factor::K => unreachable!("K has no side"),
        }
    }

    /// `(|X_K|, |X_G|, |X_H|)`.
    pub fn letter_counts(&self) -> (usize, usize, usize) {
        let c = |f| self.letters.iter().filter(|l| l.factor == f).count();
        (c(Factor::K), c(Factor::G), c(Factor::H))
    }

    pub fn identity_form(&self) -> AmalgamNormalForm {
        AmalgamNormalForm { k: self.k.identity(), seq: Vec::new() }
    }

    /// Right-multiply by `kk in K`, pushing it through the transversal letters.
    fn push_k(&self, nf: &mut AmalgamNormalForm, mut kk: usize) {
        for slot in nf.seq.iter_mut().rev() {
            let side = self.side(slot.0);
            let y = side.table.mul(slot.1, side.embed[kk]);
            let (k2, t) = side.split[y];
            slot.1 = t;
            kk = k2;
        }
        nf.k = self.k.mul(nf.k, kk);
    }

    /// Right-multiply by an element of factor `f` (given in that factor's table).
    pub fn mul_factor(&self, nf: &mut AmalgamNormalForm, f: Factor, x: usize) {
        if f == Factor::K {
            self.push_k(nf, x);
            return;
        }
        let side = self.side(f);
        match nf.seq.last().copied() {
            Some((lf, t)) if lf == f => {
                let y = side.table.mul(t, x);
                let (k2, t2) = side.split[y];
                nf.seq.pop();
                self.push_k(nf, k2);
                if t2 != side.table.identity() {
                    nf.seq.push((f, t2));
                }
            }
            _ => {
                let (k2, t2) = side.split[x];
                self.push_k(nf, k2);
                if t2 != side.table.identity() {
                    nf.seq.push((f, t2));
                }
            }
        }
    }

    pub fn mul_letter(&self, nf: &mut AmalgamNormalForm, a: usize) {
        let l = self.letters[a];
        self.mul_factor(nf, l.factor, l.element);
    }

    pub fn normal_form(&self, w: &[usize]) -> Result<AmalgamNormalForm, GroupError> {
        let mut nf = self.identity_form();
        for &a in w {
            if a >= self.letters.len() {
                return Err(GroupError::Amalgam(format!("letter id {a} out of range")));
            }
            self.mul_letter(&mut nf, a);
        }
        Ok(nf)
    }

    /// A word over `X` spelling a normal form.
    pub fn form_word(&self, nf: &AmalgamNormalForm) -> Word {
        let find = |f: Factor, e: usize| {
            self.letters
                .iter()
                .position(|l| l.factor == f && l.element == e)
                .expect("letter exists")
        };
        let mut w = Vec::new();
        if nf.k != self.k.identity() {
            w.push(find(Factor::K, nf.k));
        }
        for &(f, t) in &nf.seq {
            w.push(find(f, t));
        }
        w
    }

    /// Cyclically alternating words: `lambda`, single letters, and
    /// alternating `X_G`/`X_H` words whose first and last letters also
    /// alternate.
    pub fn conj_geodesic_dfa(&self) -> Dfa {
        const START: usize = 0;
        const K1: usize = 1;
        const G1: usize = 2;
        const H1: usize = 3;
        const GH: usize = 4;
        const GG: usize = 5;
        const HG: usize = 6;
        const HH: usize = 7;
        const DEAD: usize = 8;
        let letters = &self.letters;
        Dfa::from_fn(
            self.alphabet.clone(),
            9,
            START,
            |q| matches!(q, START | K1 | G1 | H1 | GH | HG),
            |q, a| match (q, letters[a].factor) {
                (START, Factor::K) => K1,
                (START, Factor::G) => G1,
                (START, Factor::H) => H1,
                (G1 | GG, Factor::H) => GH,
                (H1 | HH, Factor::G) => HG,
                (GH, Factor::G) => GG,
                (HG, Factor::H) => HH,
                _ => DEAD,
            },
        )
        .minimize()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Z/4 *_{Z/2} Z/4 with K = squares.
    pub(crate) fn z4_z2_z4() -> AmalgamSpec {
        let z4 = Arc::new(FiniteGroupTable::cyclic(4));
        let z2 = Arc::new(FiniteGroupTable::cyclic(2));
        AmalgamSpec::new(z4.clone(), z4, z2, vec![0, 2], vec![0, 2]).unwrap()
    }

    #[test]
    fn letters_of_z4_amalgam() {
        let a = z4_z2_z4();
        assert_eq!(a.letter_counts(), (1, 2, 2));
        assert_eq!(a.alphabet().render_word(&[0, 1, 3]), "k:a g:a h:a");
    }

    #[test]
    fn normal_forms() {
        let a = z4_z2_z4();
        assert_eq!(a.normal_form(&[]).unwrap(), a.identity_form());
        assert_eq!(a.normal_form(&[0]).unwrap().seq.len(), 0);
        let ghgh = a.normal_form(&[1, 3, 1, 3]).unwrap();
        assert_eq!(ghgh.seq.len(), 4);
        // g g = k in Z/4 *_{Z/2} Z/4 (a^2 is the amalgamated element)
        let gg = a.normal_form(&[1, 1]).unwrap();
        assert_eq!(gg, a.normal_form(&[0]).unwrap());
        // k commutes with everything
        assert_eq!(a.normal_form(&[0, 1]).unwrap(), a.normal_form(&[1, 0]).unwrap());
    }

    #[test]
    fn form_word_round_trip() {
        let a = z4_z2_z4();
        for w in [vec![1, 3, 2], vec![0, 4, 1], vec![2, 2, 2]] {
            let nf = a.normal_form(&w).unwrap();
            assert_eq!(a.normal_form(&a.form_word(&nf)).unwrap(), nf);
        }
    }

    #[test]
    fn conj_geodesic_language() {
        let a = z4_z2_z4();
        let d = a.conj_geodesic_dfa();
        assert!(d.accepts(&[]).unwrap());
        assert!(d.accepts(&[0]).unwrap());
        assert!(!d.accepts(&[1, 1]).unwrap());
        assert!(d.accepts(&[1, 3]).unwrap());
        assert!(!d.accepts(&[1, 3, 1]).unwrap());
        assert!(!d.accepts(&[0, 1]).unwrap());
    }

    #[test]
    fn rejects_bad_embedding() {
        let z4 = Arc::new(FiniteGroupTable::cyclic(4));
        let z2 = Arc::new(FiniteGroupTable::cyclic(2));
        assert!(AmalgamSpec::new(z4.clone(), z4.clone(), z2.clone(), vec![0, 1], vec![0, 2]).is_err());
        assert!(AmalgamSpec::new(z4.clone(), z4, z2, vec![0, 0], vec![0, 2]).is_err());
    }
}
