//! Weyl group elements, canonical reduced words, enumeration with an
//! on-disk cache, and minimal coset representatives.
//!
//! An element is stored as the images of the simple roots (which determines
//! it as a linear map) together with its canonical reduced word: the
//! lexicographically least reduced word, obtained by repeatedly splitting off
//! the smallest left descent.

use std::collections::{HashMap, HashSet};
use std::io::{Read as _, Write as _};
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::Error;
use crate::roots::{self, CartanType, Rat, Root, RootSystem, Weight};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylElement {
    /// Image of each simple root, in root coordinates.
    images: Vec<Root>,
    /// Canonical (lexicographically least) reduced word, 0-based generators.
    word: Vec<u8>,
}

impl WeylElement {
    pub fn identity(sys: &RootSystem) -> Self {
        let images = (0..sys.rank()).map(|i| sys.simple_root(i)).collect();
        WeylElement {
            images,
            word: Vec::new(),
        }
    }

    pub fn simple(sys: &RootSystem, i: usize) -> Self {
        let images = (0..sys.rank())
            .map(|j| sys.simple_reflect_root(i, &sys.simple_root(j)))
            .collect();
        WeylElement {
            images,
            word: vec![i as u8],
        }
    }

    pub fn reflection(sys: &RootSystem, gamma: &Root) -> Result<Self, Error> {
        if !sys.is_root(gamma) {
            return Err(Error::NotARoot(format!("{gamma:?}")));
        }
        let images = (0..sys.rank())
            .map(|j| sys.reflect_root(gamma, &sys.simple_root(j)))
            .collect();
        Ok(Self::from_images(sys, images))
    }

    pub fn from_word(sys: &RootSystem, word: &[usize]) -> Self {
        let mut w = Self::identity(sys);
        for &i in word {
            w = w.mul(sys, &Self::simple(sys, i));
        }
        w
    }

    pub(crate) fn from_images(sys: &RootSystem, images: Vec<Root>) -> Self {
        let word = canonical_word(sys, &images);
        WeylElement { images, word }
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Apply to a vector in root coordinates.
    pub fn act_root(&self, r: &[i64]) -> Root {
        let n = self.images.len();
        let mut out = vec![0i64; n];
        for (k, &c) in r.iter().enumerate() {
            if c != 0 {
                for j in 0..n {
                    out[j] += c * self.images[k][j];
                }
            }
        }
        out
    }

    /// Apply to a weight in fundamental coordinates.
    pub fn act_weight(&self, sys: &RootSystem, w: &[Rat]) -> Weight {
        let n = sys.rank();
        let rc = sys.fund_to_root(w);
        let mut out_root = vec![Rat::zero(); n];
        for k in 0..n {
            if rc[k].is_zero() {
                continue;
            }
            for j in 0..n {
                out_root[j] += rc[k] * Rational64::from_integer(self.images[k][j]);
            }
        }
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| out_root[k] * Rational64::from_integer(sys.cartan[k][j]))
                    .fold(Rat::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// `self * other`, acting as `(self * other)(x) = self(other(x))`.
    pub fn mul(&self, sys: &RootSystem, other: &WeylElement) -> WeylElement {
        let images = other
            .images
            .iter()
            .map(|r| self.act_root(r))
            .collect::<Vec<_>>();
        Self::from_images(sys, images)
    }

    pub fn inverse(&self, sys: &RootSystem) -> WeylElement {
        Self::from_images(sys, invert_images(&self.images))
    }

    /// True if `l(self * s_i) < l(self)`, i.e. `self(alpha_i) < 0`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        !RootSystem::is_positive(&self.images[i])
    }

    /// Positive roots sent to negative roots.
    pub fn inversions(&self, sys: &RootSystem) -> Vec<Root> {
        sys.positive_roots
            .iter()
            .filter(|r| !RootSystem::is_positive(&self.act_root(r)))
            .cloned()
            .collect()
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.word.len(), &self.word).cmp(&(other.word.len(), &other.word))
    }
}

/// Images of the inverse element: invert the integer matrix whose columns
/// are the images of the simple roots.
fn invert_images(images: &[Root]) -> Vec<Root> {
    let n = images.len();
    let m: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Rational64::from_integer(images[j][i]))
                .collect()
        })
        .collect();
    let minv = roots::invert(&m);
    (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let x = minv[i][j];
                    debug_assert!(x.is_integer());
                    x.to_integer()
                })
                .collect()
        })
        .collect()
}

/// Lexicographically least reduced word: repeatedly strip the smallest left
/// descent.  `i` is a left descent of `w` iff `w^{-1}(alpha_i) < 0`.
fn canonical_word(sys: &RootSystem, images: &[Root]) -> Vec<u8> {
    let n = sys.rank();
    let mut v = invert_images(images); // images of w^{-1}
    let mut word = Vec::new();
    loop {
        let i = (0..n).find(|&i| !RootSystem::is_positive(&v[i]));
        match i {
            None => break,
            Some(i) => {
                word.push(i as u8);
                // v <- v * s_i
                v = (0..n)
                    .map(|j| {
                        let sj = sys.simple_reflect_root(i, &sys.simple_root(j));
                        let mut out = vec![0i64; n];
                        for (k, &c) in sj.iter().enumerate() {
                            if c != 0 {
                                for (o, &vk) in out.iter_mut().zip(v[k].iter()) {
                                    *o += c * vk;
                                }
                            }
                        }
                        out
                    })
                    .collect();
            }
        }
    }
    word
}

// ---------------------------------------------------------------------------
// Full-group enumeration with a cache
// ---------------------------------------------------------------------------

fn memory_cache() -> &'static Mutex<HashMap<CartanType, Arc<Vec<WeylElement>>>> {
    static CACHE: OnceLock<Mutex<HashMap<CartanType, Arc<Vec<WeylElement>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn cache_dir() -> PathBuf {
    match std::env::var_os("FLAGORBIT_CACHE_DIR") {
        Some(d) => PathBuf::from(d),
        None => std::env::temp_dir().join("flagorbit-cache"),
    }
}

const CACHE_MAGIC: &[u8; 4] = b"FOWC";
const CACHE_VERSION: u32 = 1;

/// All elements of the Weyl group, sorted by (length, canonical word).
/// Results are memoized in memory and persisted to a small cache file.
pub fn enumerate(sys: &RootSystem) -> Arc<Vec<WeylElement>> {
    if let Some(v) = memory_cache().lock().unwrap().get(&sys.ctype) {
        return Arc::clone(v);
    }
    let elements = match load_cache(sys) {
        Some(e) => e,
        None => {
            let e = enumerate_bfs(sys);
            let _ = save_cache(sys, &e); // cache is best-effort
            e
        }
    };
    let arc = Arc::new(elements);
    memory_cache()
        .lock()
        .unwrap()
        .insert(sys.ctype, Arc::clone(&arc));
    arc
}

fn enumerate_bfs(sys: &RootSystem) -> Vec<WeylElement> {
    let n = sys.rank();
    let simples: Vec<WeylElement> = (0..n).map(|i| WeylElement::simple(sys, i)).collect();
    let mut seen: HashSet<Vec<Root>> = HashSet::new();
    let id = WeylElement::identity(sys);
    seen.insert(id.images.clone());
    let mut out = vec![id];
    let mut frontier = 0usize;
    while frontier < out.len() {
        let w = out[frontier].clone();
        frontier += 1;
        for s in &simples {
            let nxt = w.mul(sys, s);
            if nxt.length() > w.length() && seen.insert(nxt.images.clone()) {
                out.push(nxt);
            }
        }
    }
    out.sort();
    out
}

fn cache_path(sys: &RootSystem) -> PathBuf {
    cache_dir().join(format!("weyl-{}.bin", sys.ctype))
}

fn save_cache(sys: &RootSystem, elements: &[WeylElement]) -> Result<(), Error> {
    let dir = cache_dir();
    std::fs::create_dir_all(&dir)?;
    let npos = sys.positive_roots.len();
    let bitset_len = npos.div_ceil(8);
    let mut buf: Vec<u8> = Vec::new();
    buf.extend_from_slice(CACHE_MAGIC);
    buf.extend_from_slice(&CACHE_VERSION.to_le_bytes());
    buf.push(sys.ctype.family.letter() as u8);
    buf.push(sys.ctype.rank as u8);
    buf.extend_from_slice(&(elements.len() as u64).to_le_bytes());
    for w in elements {
        buf.extend_from_slice(&(w.word.len() as u16).to_le_bytes());
        buf.extend_from_slice(&w.word);
        let mut bits = vec![0u8; bitset_len];
        for (k, r) in sys.positive_roots.iter().enumerate() {
            if !RootSystem::is_positive(&w.act_root(r)) {
                bits[k / 8] |= 1 << (k % 8);
            }
        }
        buf.extend_from_slice(&bits);
    }
    let tmp = dir.join(format!("weyl-{}.tmp", sys.ctype));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(&buf)?;
    }
    std::fs::rename(&tmp, cache_path(sys))?;
    Ok(())
}

fn load_cache(sys: &RootSystem) -> Option<Vec<WeylElement>> {
    let mut f = std::fs::File::open(cache_path(sys)).ok()?;
    let mut buf = Vec::new();
    f.read_to_end(&mut buf).ok()?;
    parse_cache(sys, &buf).ok()
}

fn parse_cache(sys: &RootSystem, buf: &[u8]) -> Result<Vec<WeylElement>, Error> {
    let bad = |m: &str| Error::CacheFormat(m.to_string());
    if buf.len() < 18 || &buf[0..4] != CACHE_MAGIC {
        return Err(bad("bad magic"));
    }
    let version = u32::from_le_bytes(buf[4..8].try_into().unwrap());
    if version != CACHE_VERSION {
        return Err(bad("unknown version"));
    }
    if buf[8] != sys.ctype.family.letter() as u8 || buf[9] as usize != sys.ctype.rank {
        return Err(bad("type mismatch"));
    }
    let count = u64::from_le_bytes(buf[10..18].try_into().unwrap()) as usize;
    let npos = sys.positive_roots.len();
    let bitset_len = npos.div_ceil(8);
    let mut pos = 18usize;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        if pos + 2 > buf.len() {
            return Err(bad("truncated"));
        }
        let wl = u16::from_le_bytes(buf[pos..pos + 2].try_into().unwrap()) as usize;
        pos += 2;
        if pos + wl + bitset_len > buf.len() {
            return Err(bad("truncated"));
        }
        let word: Vec<usize> = buf[pos..pos + wl].iter().map(|&b| b as usize).collect();
        pos += wl;
        let bits = &buf[pos..pos + bitset_len];
        pos += bitset_len;
        if word.iter().any(|&i| i >= sys.rank()) {
            return Err(bad("generator out of range"));
        }
        let w = WeylElement::from_word(sys, &word);
        // verify record consistency
        let popcount: usize = bits.iter().map(|b| b.count_ones() as usize).sum();
        if w.length() != wl || popcount != wl {
            return Err(bad("inconsistent record"));
        }
        out.push(w);
    }
    if pos != buf.len() {
        return Err(bad("trailing bytes"));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Longest elements and coset representatives
// ---------------------------------------------------------------------------

/// The longest element w_0, by greedy ascent.
pub fn longest_element(sys: &RootSystem) -> WeylElement {
    let mut w = WeylElement::identity(sys);
    loop {
        match (0..sys.rank()).find(|&i| !w.has_right_descent(i)) {
            Some(i) => w = w.mul(sys, &WeylElement::simple(sys, i)),
            None => return w,
        }
    }
}

/// The longest element of the standard parabolic subgroup generated by the
/// given simple reflections.
pub fn longest_levi_element(sys: &RootSystem, levi: &[usize]) -> WeylElement {
    let mut w = WeylElement::identity(sys);
    loop {
        match levi.iter().copied().find(|&i| !w.has_right_descent(i)) {
            Some(i) => w = w.mul(sys, &WeylElement::simple(sys, i)),
            None => return w,
        }
    }
}

/// The longest element of W^P (minimal representatives of W/W_P), where
/// `levi` lists the simple reflections of W_P: strip right descents in the
/// Levi from w_0.
pub fn longest_coset_rep(sys: &RootSystem, levi: &[usize]) -> WeylElement {
    let mut w = longest_element(sys);
    loop {
        match levi.iter().copied().find(|&i| w.has_right_descent(i)) {
            Some(i) => w = w.mul(sys, &WeylElement::simple(sys, i)),
            None => return w,
        }
    }
}

/// A minimal representative of a coset in W/W_P together with the weight
/// `w(varpi)` that indexes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetRep {
    pub w: WeylElement,
    pub weight: Weight,
    /// Marked node of the parabolic (W_P is generated by the other nodes).
    pub node: usize,
}

/// All minimal representatives of W/W_P for the maximal parabolic marked at
/// `node`, computed by BFS over the orbit of the fundamental weight (so the
/// full group is never enumerated).  Sorted by (length, word).
pub fn min_coset_reps(sys: &RootSystem, node: usize) -> Result<Vec<CosetRep>, Error> {
    if node >= sys.rank() {
        return Err(Error::NodeOutOfRange {
            node,
            rank: sys.rank(),
        });
    }
    let start = sys.fundamental_weight(node);
    let mut seen: HashSet<Weight> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = vec![(start.clone(), WeylElement::identity(sys))];
    let mut out: Vec<CosetRep> = Vec::new();
    let mut qi = 0usize;
    while qi < queue.len() {
        let (lam, u) = queue[qi].clone();
        qi += 1;
        out.push(CosetRep {
            w: u.clone(),
            weight: lam.clone(),
            node,
        });
        for i in 0..sys.rank() {
            // <lam, alpha_i^vee> is the i-th fundamental coordinate
            if lam[i] > Rat::zero() {
                let mut lam2 = lam.clone();
                let alpha_fund = sys.root_to_fund(&sys.simple_root(i));
                for j in 0..sys.rank() {
                    lam2[j] -= lam[i] * Rational64::from_integer(alpha_fund[j]);
                }
                if seen.insert(lam2.clone()) {
                    let u2 = WeylElement::simple(sys, i).mul(sys, &u);
                    debug_assert_eq!(u2.length(), u.length() + 1);
                    queue.push((lam2, u2));
                }
            }
        }
    }
    out.sort_by(|a, b| a.w.cmp(&b.w));
    Ok(out)
}

/// Check whether the maximal parabolics at `n1`, `n2` are opposite:
/// `w_0(chi_{P1}) = -chi_{P2}` as cocharacters.
pub fn is_opposite_nodes(sys: &RootSystem, n1: usize, n2: usize) -> bool {
    let w0 = longest_element(sys);
    (0..sys.rank()).all(|j| {
        let img = w0.act_root(&sys.simple_root(j));
        let expect = if j == n2 { -1 } else { 0 };
        img[n1] == expect
    })
}

/// The dual representative `u^vee = u * w_{P2}` of a minimal representative
/// `u` in W^{P1}, for an opposite pair (P1, P2).  Certifies that the result
/// is a minimal representative in W^{P2} and that lengths add.
pub fn dual_rep(
    sys: &RootSystem,
    n1: usize,
    n2: usize,
    u: &WeylElement,
) -> Result<WeylElement, Error> {
    if !is_opposite_nodes(sys, n1, n2) {
        return Err(Error::NotOppositePair);
    }
    let levi1: Vec<usize> = (0..sys.rank()).filter(|&i| i != n1).collect();
    let levi2: Vec<usize> = (0..sys.rank()).filter(|&i| i != n2).collect();
    if levi1.iter().any(|&i| u.has_right_descent(i)) {
        return Err(Error::NotMinimalRep);
    }
    let wp2 = longest_coset_rep(sys, &levi2);
    let udual = u.mul(sys, &wp2);
    if levi2.iter().any(|&i| udual.has_right_descent(i)) {
        return Err(Error::DualRepCheck(format!(
            "u*w_P2 not minimal in W^P2 for u = {:?}",
            u.word()
        )));
    }
    // l(u^vee) = l(w_P2) - l(u): u^{-1} u^vee = w_P2 with lengths adding
    if u.length() + udual.length() != wp2.length() {
        return Err(Error::DualRepCheck(format!(
            "lengths do not add: l(u)={} l(u^vee)={} l(w_P2)={}",
            u.length(),
            udual.length(),
            wp2.length()
        )));
    }
    Ok(udual)
}
