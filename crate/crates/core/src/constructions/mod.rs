//! Closed-form product constructions: spherical conjugacy series of
//! direct products and of free products of finite groups, and the
//! conjugacy-geodesic series of direct, free and amalgamated products.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::fsa::{strict_growth_series, Dfa};
use crate::graphprod::GraphProductSpec;
use crate::groups::{AmalgamSpec, VertexGroup, VertexKind};
use crate::series::{IntPolynomial, RationalFunction, SeriesError, SeriesExpansion};

#[derive(Debug, thiserror::Error)]
pub enum ConstructionError {
    #[error("letters of the first factor must all precede those of the second")]
    Ordering,
    #[error("free product input needs m, n >= 1 and class counts at most m, n")]
    BadInput,
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Data of `A * B` for finite `A`, `B` over their full generating sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeProductFiniteInput {
    /// `|X_A| = |A| - 1`
    pub m: u64,
    pub n: u64,
    /// nontrivial conjugacy classes of `A`
    pub beta_a: u64,
    pub beta_b: u64,
}

impl FreeProductFiniteInput {
    pub fn new(m: u64, n: u64, beta_a: u64, beta_b: u64) -> Result<Self, ConstructionError> {
        if m == 0 || n == 0 || beta_a > m || beta_b > n || beta_a == 0 || beta_b == 0 {
            return Err(ConstructionError::BadInput);
        }
        Ok(Self { m, n, beta_a, beta_b })
    }

    /// From finite vertex groups; `β` comes from the class decomposition of
    /// the tables.
    pub fn from_vertices(a: &VertexGroup, b: &VertexGroup) -> Result<Self, ConstructionError> {
        let full = |g: &VertexGroup| match g.table() {
            Some(t) if g.num_letters() + 1 == t.order() => Ok((g.num_letters() as u64, g.nontrivial_class_count().expect("finite") as u64)),
            Some(_) => Err(ConstructionError::Unsupported("free product formula needs full generating sets".into())),
            None => Err(ConstructionError::Unsupported("free product formula needs finite factors".into())),
        };
        let (m, ba) = full(a)?;
        let (n, bb) = full(b)?;
        Self::new(m, n, ba, bb)
    }

    pub fn alpha(&self) -> u64 {
        self.m * self.n
    }

    pub fn beta(&self) -> u64 {
        self.beta_a + self.beta_b
    }
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// `f(2r) = (1/r) Σ_{e | r} φ(e) α^{r/e}`: necklaces of `r` alternating
/// syllable pairs up to rotation.
pub fn burnside_f(input: &FreeProductFiniteInput, r: u64) -> BigUint {
    assert!(r >= 1);
    let alpha = BigUint::from(input.alpha());
    let mut sum = BigUint::zero();
    for e in (1..=r).filter(|e| r % e == 0) {
        sum += BigUint::from(euler_phi(e)) * alpha.pow((r / e) as u32);
    }
    let (q, rem) = sum.div_rem(&BigUint::from(r));
    assert!(rem.is_zero(), "orbit count is integral");
    q
}

/// `1 + β z + Σ_r f(2r) z^{2r}`, to order `order`.
pub fn sphconj_series_free_product_finite(input: &FreeProductFiniteInput, order: usize) -> SeriesExpansion {
    let c = (0..=order)
        .map(|i| match i {
            0 => BigInt::one(),
            1 => BigInt::from(input.beta()),
            _ if i % 2 == 0 => BigInt::from(burnside_f(input, (i / 2) as u64)),
            _ => BigInt::zero(),
        })
        .collect();
    SeriesExpansion::new(c)
}

pub fn sphconj_series_direct_product(fa: &RationalFunction, fb: &RationalFunction) -> RationalFunction {
    fa.mul(fb)
}

fn used_letters(d: &Dfa) -> Vec<usize> {
    let live = d.live_states();
    let k = d.alphabet().len();
    (0..k)
        .filter(|&a| (0..d.num_states()).any(|q| live[q] && live[d.step(q, a)]))
        .collect()
}

/// `ConjSL(G x H)` as the concatenation `ConjSL(G) ConjSL(H)`, valid when
/// every letter of `G` precedes every letter of `H`.
pub fn sphconj_direct_product(a: &Dfa, b: &Dfa) -> Result<Dfa, ConstructionError> {
    let (ua, ub) = (used_letters(a), used_letters(b));
    if let (Some(&x), Some(&y)) = (ua.last(), ub.first()) {
        if x >= y {
            return Err(ConstructionError::Ordering);
        }
    }
    a.concat(b).map_err(|e| ConstructionError::Unsupported(e.to_string()))
}

/// `ConjSL` of a single vertex group, when regular.
pub fn vertex_sphconj_dfa(g: &VertexGroup, alphabet: std::sync::Arc<crate::fsa::Alphabet>) -> Option<Dfa> {
    match g.kind() {
        VertexKind::Finite(_) => Some(Dfa::from_words(alphabet, &g.conj_sl_words()?).expect("local words")),
        // abelian with unique geodesics
        VertexKind::InfiniteCyclic | VertexKind::Free { rank: 1 } => Some(g.geodesic_dfa(alphabet)),
        VertexKind::Free { .. } => None,
    }
}

/// `ConjSL` over a graph product where it is regular and the construction
/// is known: complete graphs of vertices with regular `ConjSL` whose letter
/// blocks are ordered, and `Z/2 * Z/2`.
pub fn sphconj_language(spec: &GraphProductSpec) -> Result<Dfa, ConstructionError> {
    let alpha = spec.alphabet().clone();
    let n = spec.num_vertices();
    if n == 2 && spec.is_edgeless() && (0..2).all(|i| spec.vertex(i).num_letters() == 1 && spec.vertex(i).is_finite()) {
        let (x, y) = (spec.vertex_letters(0)[0].min(spec.vertex_letters(1)[0]), spec.vertex_letters(0)[0].max(spec.vertex_letters(1)[0]));
        // {λ, x, y} ∪ (xy)^+
        return Ok(Dfa::from_fn(alpha, 6, 0, |q| q <= 3, |q, a| match (q, a == x) {
            (0, true) => 1,
            (0, false) if a == y => 2,
            (1, false) if a == y => 3,
            (3, true) => 4,
            (4, false) if a == y => 3,
            _ => 5,
        })
        .minimize());
    }
    if !spec.is_complete() {
        return Err(ConstructionError::Unsupported(
            "spherical conjugacy automata are built for direct products and Z/2 * Z/2 only; \
             for free products the language is not regular in general"
                .into(),
        ));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| spec.vertex_letters(i)[0]);
    let mut acc = Dfa::from_words(alpha.clone(), &[Vec::new()]).expect("empty word");
    for &i in &order {
        let local = vertex_sphconj_dfa(spec.vertex(i), spec.local_alphabet(i)).ok_or_else(|| {
            ConstructionError::Unsupported(format!(
                "vertex {i} is a free group of rank at least 2, whose spherical conjugacy language is not regular"
            ))
        })?;
        let lifted = embed_local(&local, spec, i);
        acc = sphconj_direct_product(&acc, &lifted)?.minimize();
    }
    Ok(acc)
}

/// A local DFA read over the global alphabet, other letters rejected.
fn embed_local(local: &Dfa, spec: &GraphProductSpec, i: usize) -> Dfa {
    let dead = local.num_states();
    Dfa::from_fn(spec.alphabet().clone(), dead + 1, local.start(), |q| q < dead && local.is_accepting(q), |q, a| {
        if q == dead || spec.vertex_of(a) != i {
            dead
        } else {
            local.step(q, spec.local_index(a))
        }
    })
    .minimize()
}

/// Shuffle of the factor series.
pub fn conjgeo_series_direct_product(fa: &SeriesExpansion, fb: &SeriesExpansion) -> Result<SeriesExpansion, ConstructionError> {
    Ok(fa.binomial_shuffle(fb)?)
}

/// `cgA + cgB - 1 + z [geoA'(geoB-1) + geoB'(geoA-1)] / (1 - (geoA-1)(geoB-1))`.
pub fn conjgeo_series_free_product(
    cg_a: &RationalFunction,
    cg_b: &RationalFunction,
    geo_a: &RationalFunction,
    geo_b: &RationalFunction,
) -> Result<RationalFunction, ConstructionError> {
    let one = RationalFunction::one();
    let (ga, gb) = (geo_a.sub(&one), geo_b.sub(&one));
    let num = geo_a.derivative().mul(&gb).add(&geo_b.derivative().mul(&ga));
    let den = one.sub(&ga.mul(&gb));
    let frac = RationalFunction::z().mul(&num).div(&den)?;
    Ok(cg_a.add(cg_b).sub(&one).add(&frac))
}

/// Same series through `- z d/dz ln[1 - (geoA-1)(geoB-1)]`.
pub fn conjgeo_series_free_product_log_form(
    cg_a: &RationalFunction,
    cg_b: &RationalFunction,
    geo_a: &RationalFunction,
    geo_b: &RationalFunction,
) -> Result<RationalFunction, ConstructionError> {
    let one = RationalFunction::one();
    let p = geo_a.sub(&one).mul(&geo_b.sub(&one));
    Ok(cg_a.add(cg_b).sub(&one).sub(&one.sub(&p).z_ddz_log()?))
}

/// `(1 + (m+n) z + mn z^2 - mn(m+n) z^3) / (1 - mn z^2)`.
pub fn conjgeo_series_free_product_finite_closed(m: i64, n: i64) -> RationalFunction {
    RationalFunction::from_i64s(&[1, m + n, m * n, -m * n * (m + n)], &[1, 0, -m * n]).expect("nonzero denominator")
}

/// `1 + |X| z + 2pq z^2 / (1 - pq z^2)` with `p = |G \ K|`, `q = |H \ K|`.
pub fn conjgeo_series_amalgam_closed(spec: &AmalgamSpec) -> RationalFunction {
    let (xk, xg, xh) = spec.letter_counts();
    let (x, pq) = ((xk + xg + xh) as i64, (xg * xh) as i64);
    let head = RationalFunction::from_poly(IntPolynomial::from_i64s(&[1, x]));
    let tail = RationalFunction::from_i64s(&[0, 0, 2 * pq], &[1, 0, -pq]).expect("nonzero denominator");
    head.add(&tail)
}

/// Transfer-matrix series of the amalgam conjugacy-geodesic automaton.
pub fn conjgeo_series_amalgam(spec: &AmalgamSpec) -> RationalFunction {
    strict_growth_series(&spec.conj_geodesic_dfa())
}
