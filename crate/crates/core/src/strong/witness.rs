//! Witness maps as values. A witness for `(u, v)` is a weight-preserving
//! bijection `f` on words; a strong witness satisfies
//! `Em(u, w) = Em(v, f(w))`, a Wilf witness only `u <= w iff v <= f(w)`.
//! Combinators lift witnesses along the lifting constructions and
//! [`validate`] re-checks any witness exhaustively up to a norm bound.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{enumerate_words, EnumerationSpec};
use crate::word::{embedding_indices_unchecked, k_factorize, reverse, shift_up, Composition, IotaMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WitnessKind {
    Strong,
    Wilf,
}

pub trait Witness: Send + Sync {
    /// Spec string that rebuilds this witness through the registry.
    fn describe(&self) -> String;
    fn pair(&self) -> (Composition, Composition);
    fn kind(&self) -> WitnessKind;
    /// Whether every image is a rearrangement of its argument.
    fn is_rearrangement(&self) -> bool;
    fn apply(&self, w: &Composition) -> Result<Composition>;
}

pub type DynWitness = Arc<dyn Witness>;

impl fmt::Debug for dyn Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

fn word_arg(w: &Composition) -> String {
    if w.is_empty() {
        "_".into()
    } else if w.parts().iter().any(|&p| p > 9) {
        format!("[{w}]")
    } else {
        w.to_string()
    }
}

fn require_strong(inner: &DynWitness, what: &str) -> Result<()> {
    if inner.kind() != WitnessKind::Strong {
        return Err(Error::Precondition(format!("{what} needs a strong witness, got {}", inner.describe())));
    }
    Ok(())
}

fn require_rearrangement(inner: &DynWitness, what: &str) -> Result<()> {
    if !inner.is_rearrangement() {
        return Err(Error::Precondition(format!("{what} needs a rearrangement witness, got {}", inner.describe())));
    }
    Ok(())
}

/// `w ↦ w`, witnessing `u ∼ₛ u`.
pub struct Identity {
    u: Composition,
}

impl Identity {
    pub fn new(u: Composition) -> Self {
        Identity { u }
    }
}

impl Witness for Identity {
    fn describe(&self) -> String {
        format!("identity({})", word_arg(&self.u))
    }
    fn pair(&self) -> (Composition, Composition) {
        (self.u.clone(), self.u.clone())
    }
    fn kind(&self) -> WitnessKind {
        WitnessKind::Strong
    }
    fn is_rearrangement(&self) -> bool {
        true
    }
    fn apply(&self, w: &Composition) -> Result<Composition> {
        Ok(w.clone())
    }
}

/// `w ↦ wʳ`, witnessing `u ∼ uʳ`. Embedding indices are mirrored, so this
/// is only a Wilf witness.
pub struct Reverse {
    u: Composition,
}

impl Reverse {
    pub fn new(u: Composition) -> Self {
        Reverse { u }
    }
}

impl Witness for Reverse {
    fn describe(&self) -> String {
        format!("reverse({})", word_arg(&self.u))
    }
    fn pair(&self) -> (Composition, Composition) {
        (self.u.clone(), reverse(&self.u))
    }
    fn kind(&self) -> WitnessKind {
        WitnessKind::Wilf
    }
    fn is_rearrangement(&self) -> bool {
        true
    }
    fn apply(&self, w: &Composition) -> Result<Composition> {
        Ok(reverse(w))
    }
}

/// `g(by) = b f(y)`, witnessing `1u ∼ₛ 1v`.
pub struct Prepend {
    inner: DynWitness,
}

impl Prepend {
    pub fn new(inner: DynWitness) -> Result<Self> {
        require_strong(&inner, "prepend")?;
        Ok(Prepend { inner })
    }
}

impl Witness for Prepend {
    fn describe(&self) -> String {
        format!("prepend({})", self.inner.describe())
    }
    fn pair(&self) -> (Composition, Composition) {
        let (u, v) = self.inner.pair();
        let one = Composition::repeat(1, 1);
        (one.concat(&u), one.concat(&v))
    }
    fn kind(&self) -> WitnessKind {
        WitnessKind::Strong
    }
    fn is_rearrangement(&self) -> bool {
        self.inner.is_rearrangement()
    }
    fn apply(&self, w: &Composition) -> Result<Composition> {
        let Some(&b) = w.parts().first() else {
            return Ok(w.clone());
        };
        let fy = self.inner.apply(&w.slice(1, w.len()))?;
        Ok(Composition::repeat(b, 1).concat(&fy))
    }
}

/// `h(by) = f(y) b`, witnessing `1u ∼ₛ v1`.
pub struct Rotate {
    inner: DynWitness,
}

impl Rotate {
    pub fn new(inner: DynWitness) -> Result<Self> {
        require_strong(&inner, "rotate")?;
        Ok(Rotate { inner })
    }
}

impl Witness for Rotate {
    fn describe(&self) -> String {
        format!("rotate({})", self.inner.describe())
    }
    fn pair(&self) -> (Composition, Composition) {
        let (u, v) = self.inner.pair();
        let one = Composition::repeat(1, 1);
        (one.concat(&u), v.concat(&one))
    }
    fn kind(&self) -> WitnessKind {
        WitnessKind::Strong
    }
    fn is_rearrangement(&self) -> bool {
        self.inner.is_rearrangement()
    }
    fn apply(&self, w: &Composition) -> Result<Composition> {
        let Some(&b) = w.parts().first() else {
            return Ok(w.clone());
        };
        let mut out = self.inner.apply(&w.slice(1, w.len()))?;
        out.push(b);
        Ok(out)
    }
}

fn shift_down_one(z: &Composition) -> Composition {
    Composition::from_parts_unchecked(z.parts().iter().map(|p| p - 1).collect())
}

/// `y₁ f(z₁⁻)⁺ y₂ f(z₂⁻)⁺ …` over the 2-factorization, witnessing
/// `u⁺ ∼ v⁺` with the kind of `f`.
pub struct ShiftUp {
    inner: DynWitness,
}

impl ShiftUp {
    pub fn new(inner: DynWitness) -> Self {
        ShiftUp { inner }
    }
}

impl Witness for ShiftUp {
    fn describe(&self) -> String {
        format!("shift({})", self.inner.describe())
    }
    fn pair(&self) -> (Composition, Composition) {
        let (u, v) = self.inner.pair();
        (shift_up(&u, 1), shift_up(&v, 1))
    }
    fn kind(&self) -> WitnessKind {
        self.inner.kind()
    }
    fn is_rearrangement(&self) -> bool {
        self.inner.is_rearrangement()
    }
    fn apply(&self, w: &Composition) -> Result<Composition> {
        let mut fac = k_factorize(w, 2)?;
        for z in &mut fac.high {
            *z = shift_up(&self.inner.apply(&shift_down_one(z))?, 1);
        }
        Ok(fac.join())
    }
}

/// Replaces each residue subword `w[i] = w_i w_{i+k} …` by `f(w[i])`,
/// witnessing `u₁ᵏ…u_nᵏ ∼ₛ v₁ᵏ…v_nᵏ`.
pub struct Interleave {
    k: usize,
    inner: DynWitness,
}

impl Interleave {
    pub fn new(k: usize, inner: DynWitness) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("interleave step must be >= 1".into()));
        }
        require_strong(&inner, "interleave")?;
        Ok(Interleave { k, inner })
    }
}

fn stretch(u: &Composition, k: usize) -> Composition {
    Composition::from_parts_unchecked(u.parts().iter().flat_map(|&p| std::iter::repeat(p).take(k)).collect())
}

impl Witness for Interleave {
    fn describe(&self) -> String {
        format!("interleave({}, {})", self.k, self.inner.describe())
    }
    fn pair(&self) -> (Composition, Composition) {
        let (u, v) = self.inner.pair();
        (stretch(&u, self.k), stretch(&v, self.k))
    }
    fn kind(&self) -> WitnessKind {
        WitnessKind::Strong
    }
    fn is_rearrangement(&self) -> bool {
        self.inner.is_rearrangement()
    }
    fn apply(&self, w: &Composition) -> Result<Composition> {
        let mut out = w.parts().to_vec();
        for i in 0..self.k.min(w.len()) {
            let sub: Vec<u64> = w.parts().iter().skip(i).step_by(self.k).copied().collect();
            let image = self.inner.apply(&Composition::from_parts_unchecked(sub))?;
            for (slot, p) in out.iter_mut().skip(i).step_by(self.k).zip(image.parts()) {
                *slot = *p;
            }
        }
        Ok(Composition::from_parts_unchecked(out))
    }
}

/// `ψ₁ f(ω₁) ψ₂ f(ω₂) …` over the k-factorization, witnessing
/// `yuz ∼ₛ yvz` for a rearrangement `f` with `u, v` over `[k, ∞)` and
/// `y, z` over `[1, k]`. The map does not depend on `y` and `z`; they only
/// fix the reported pair.
pub struct Affix {
    k: u64,
    y: Composition,
    z: Composition,
    inner: DynWitness,
}

impl Affix {
    pub fn new(k: u64, y: Composition, z: Composition, inner: DynWitness) -> Result<Self> {
        require_strong(&inner, "affix")?;
        require_rearrangement(&inner, "affix")?;
        if k == 0 {
            return Err(Error::InvalidParameter("affix threshold must be >= 1".into()));
        }
        let (u, v) = inner.pair();
        if u.parts().iter().chain(v.parts()).any(|&p| p < k) {
            return Err(Error::Precondition(format!("affix: inner pair must lie in [{k},∞)*")));
        }
        if y.parts().iter().chain(z.parts()).any(|&p| p > k) {
            return Err(Error::Precondition(format!("affix: y and z must lie in [1,{k}]*")));
        }
        Ok(Affix { k, y, z, inner })
    }
}

impl Witness for Affix {
    fn describe(&self) -> String {
        format!("affix({}, {}, {}, {})", self.k, word_arg(&self.y), word_arg(&self.z), self.inner.describe())
    }
    fn pair(&self) -> (Composition, Composition) {
        let (u, v) = self.inner.pair();
        (self.y.concat(&u).concat(&self.z), self.y.concat(&v).concat(&self.z))
    }
    fn kind(&self) -> WitnessKind {
        WitnessKind::Strong
    }
    fn is_rearrangement(&self) -> bool {
        true
    }
    fn apply(&self, w: &Composition) -> Result<Composition> {
        let mut fac = k_factorize(w, self.k)?;
        for omega in &mut fac.high {
            *omega = self.inner.apply(omega)?;
        }
        Ok(fac.join())
    }
}

/// Collapse for `ι` extended past its declared domain by
/// `ι(d + j) = k_d + j`, so every letter `>= k₁` has a class.
fn collapse_extended(iota: &IotaMap, p: u64) -> Result<u64> {
    let vals = iota.values();
    let last = *vals.last().expect("iota has at least one value");
    if p >= last {
        Ok(iota.domain_bound() + (p - last))
    } else {
        iota.collapse_letter(p)
    }
}

/// Over the `k₁`-factorization (`k₁ = ι(1)`), each block `z` becomes
/// `f(clp(z))` with every class `j` refilled by the original letters of
/// `z` in that class, left to right. Witnesses `ι(u) ∼ ι(v)`.
pub struct IotaLift {
    iota: IotaMap,
    inner: DynWitness,
}

impl IotaLift {
    pub fn new(iota: IotaMap, inner: DynWitness) -> Result<Self> {
        require_rearrangement(&inner, "iota")?;
        let (u, v) = inner.pair();
        for &p in u.parts().iter().chain(v.parts()) {
            iota.apply_letter(p)?;
        }
        Ok(IotaLift { iota, inner })
    }

    fn lift_block(&self, z: &Composition) -> Result<Composition> {
        let classes: Vec<u64> = z.parts().iter().map(|&p| collapse_extended(&self.iota, p)).collect::<Result<_>>()?;
        let image = self.inner.apply(&Composition::from_parts_unchecked(classes.clone()))?;
        let mut queues: HashMap<u64, VecDeque<u64>> = HashMap::new();
        for (&j, &p) in classes.iter().zip(z.parts()) {
            queues.entry(j).or_default().push_back(p);
        }
        let out = image
            .parts()
            .iter()
            .map(|j| {
                queues.get_mut(j).and_then(|q| q.pop_front()).ok_or_else(|| {
                    Error::Precondition(format!("iota: inner witness {} is not a rearrangement", self.inner.describe()))
                })
            })
            .collect::<Result<_>>()?;
        Ok(Composition::from_parts_unchecked(out))
    }
}

impl Witness for IotaLift {
    fn describe(&self) -> String {
        let vals: Vec<String> = self.iota.values().iter().map(|v| v.to_string()).collect();
        format!("iota([{}], {})", vals.join(","), self.inner.describe())
    }
    fn pair(&self) -> (Composition, Composition) {
        let (u, v) = self.inner.pair();
        let lift = |w: &Composition| {
            Composition::from_parts_unchecked(
                w.parts().iter().map(|&p| self.iota.apply_letter(p).expect("checked at construction")).collect(),
            )
        };
        (lift(&u), lift(&v))
    }
    fn kind(&self) -> WitnessKind {
        self.inner.kind()
    }
    fn is_rearrangement(&self) -> bool {
        true
    }
    fn apply(&self, w: &Composition) -> Result<Composition> {
        let mut fac = k_factorize(w, self.iota.values()[0])?;
        for z in &mut fac.high {
            *z = self.lift_block(z)?;
        }
        Ok(fac.join())
    }
}

/// A finite witness for `u ∼ₛ v` on words of norm at most `bound`, built by
/// pairing words cell by cell in enumeration order. Cells are
/// `(Em, multiset of parts)` when those counts agree, which makes the map a
/// rearrangement, and `(Em, length, norm)` otherwise.
pub struct Matched {
    u: Composition,
    v: Composition,
    bound: u64,
    rearranging: bool,
    table: HashMap<Composition, Composition>,
}

type Cells<K> = BTreeMap<K, Vec<Composition>>;

fn cells<K: Ord>(u: &Composition, words: &[Composition], key: impl Fn(Vec<usize>, &Composition) -> K) -> Cells<K> {
    let mut out: Cells<K> = BTreeMap::new();
    for w in words {
        out.entry(key(embedding_indices_unchecked(u.parts(), w.parts()), w)).or_default().push(w.clone());
    }
    out
}

fn pair_cells<K: Ord>(a: Cells<K>, b: Cells<K>) -> Option<HashMap<Composition, Composition>> {
    if a.len() != b.len() || a.iter().zip(&b).any(|((ka, va), (kb, vb))| ka != kb || va.len() != vb.len()) {
        return None;
    }
    Some(a.into_values().zip(b.into_values()).flat_map(|(x, y)| x.into_iter().zip(y)).collect())
}

impl Matched {
    pub fn new(u: Composition, v: Composition, bound: u64) -> Result<Self> {
        if u.is_empty() || v.is_empty() {
            return Err(Error::EmptyWord);
        }
        let words: Vec<Composition> = enumerate_words(EnumerationSpec::up_to(bound)).collect();
        let by_multiset = |em, w: &Composition| (em, w.sorted_parts());
        let by_weight = |em, w: &Composition| (em, w.len(), w.norm());
        if let Some(table) = pair_cells(cells(&u, &words, by_multiset), cells(&v, &words, by_multiset)) {
            return Ok(Matched { u, v, bound, rearranging: true, table });
        }
        match pair_cells(cells(&u, &words, by_weight), cells(&v, &words, by_weight)) {
            Some(table) => Ok(Matched { u, v, bound, rearranging: false, table }),
            None => Err(Error::Precondition(format!("{u} and {v} have different Em censuses up to norm {bound}"))),
        }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }
}

impl Witness for Matched {
    fn describe(&self) -> String {
        format!("matched({}, {}, {})", word_arg(&self.u), word_arg(&self.v), self.bound)
    }
    fn pair(&self) -> (Composition, Composition) {
        (self.u.clone(), self.v.clone())
    }
    fn kind(&self) -> WitnessKind {
        WitnessKind::Strong
    }
    fn is_rearrangement(&self) -> bool {
        self.rearranging
    }
    fn apply(&self, w: &Composition) -> Result<Composition> {
        if w.is_empty() {
            return Ok(w.clone());
        }
        self.table.get(w).cloned().ok_or_else(|| {
            Error::InvalidParameter(format!("{w} has norm above the matched bound {}", self.bound))
        })
    }
}

/// Outcome of an exhaustive check of a witness up to a norm bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub witness: String,
    pub u: String,
    pub v: String,
    pub kind: WitnessKind,
    pub norm_bound: u64,
    pub words_checked: u64,
    /// First failing word and the reason, in enumeration order.
    pub failure: Option<(String, String)>,
}

impl Validation {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks weight preservation, injectivity, the rearrangement claim and the
/// embedding condition of the witness's kind on every word of norm at most
/// `norm_bound`, plus the empty word.
pub fn validate(witness: &dyn Witness, norm_bound: u64) -> Validation {
    let (u, v) = witness.pair();
    let mut report = Validation {
        witness: witness.describe(),
        u: u.to_string(),
        v: v.to_string(),
        kind: witness.kind(),
        norm_bound,
        words_checked: 0,
        failure: None,
    };
    let mut seen = HashSet::new();
    let words = std::iter::once(Composition::empty()).chain(enumerate_words(EnumerationSpec::up_to(norm_bound)));
    for w in words {
        report.words_checked += 1;
        if let Err(reason) = check_word(witness, &u, &v, &w, &mut seen) {
            report.failure = Some((w.to_string(), reason));
            break;
        }
    }
    report
}

fn check_word(
    witness: &dyn Witness,
    u: &Composition,
    v: &Composition,
    w: &Composition,
    seen: &mut HashSet<Composition>,
) -> std::result::Result<(), String> {
    let image = witness.apply(w).map_err(|e| e.to_string())?;
    if image.weight() != w.weight() {
        return Err(format!("image {image} has a different weight"));
    }
    if witness.is_rearrangement() && !image.is_rearrangement_of(w) {
        return Err(format!("image {image} is not a rearrangement"));
    }
    let eu = embedding_indices_unchecked(u.parts(), w.parts());
    let ev = embedding_indices_unchecked(v.parts(), image.parts());
    let ok = match witness.kind() {
        WitnessKind::Strong => eu == ev,
        WitnessKind::Wilf => eu.is_empty() == ev.is_empty(),
    };
    if !ok {
        return Err(format!("image {image}: Em(u) = {eu:?}, Em(v) = {ev:?}"));
    }
    if !seen.insert(image.clone()) {
        return Err(format!("image {image} is hit twice"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn arc(w: impl Witness + 'static) -> DynWitness {
        Arc::new(w)
    }

    #[test]
    fn basic_witnesses_validate() {
        for w in [arc(Identity::new(c("132"))), arc(Reverse::new(c("2143")))] {
            assert!(validate(w.as_ref(), 9).passed(), "{w:?}");
        }
        assert_eq!(Reverse::new(c("2143")).pair().1, c("3412"));
    }

    #[test]
    fn matching_needs_equal_censuses() {
        let m = Matched::new(c("2143"), c("3412"), 12);
        assert!(m.is_ok());
        assert!(Matched::new(c("2143"), c("3412"), 21).is_err());
        assert!(Prepend::new(arc(Reverse::new(c("12")))).is_err());
    }

    #[test]
    fn lemma_lifts_of_identity() {
        let id = arc(Identity::new(c("23")));
        let rot = arc(Rotate::new(id.clone()).unwrap());
        assert_eq!(rot.pair(), (c("123"), c("231")));
        assert_eq!(rot.apply(&c("4567")).unwrap(), c("5674"));
        let pre = Prepend::new(id).unwrap();
        assert_eq!(pre.pair(), (c("123"), c("123")));
        let sh = ShiftUp::new(rot.clone());
        assert_eq!(sh.pair(), (c("234"), c("342")));
        assert_eq!(sh.apply(&c("31451")).unwrap(), c("31541"));
        for w in [rot, arc(pre), arc(sh)] {
            assert!(validate(w.as_ref(), 11).passed(), "{w:?}");
        }
    }

    #[test]
    fn affix_example() {
        let inner = arc(ShiftUp::new(arc(ShiftUp::new(arc(Rotate::new(arc(Identity::new(c("23")))).unwrap())))));
        assert_eq!(inner.pair(), (c("345"), c("453")));
        let g = Affix::new(3, Composition::empty(), c("12"), inner).unwrap();
        assert_eq!(g.pair(), (c("34512"), c("45312")));
        assert!(validate(&g, 16).passed());
    }

    #[test]
    fn interleave_of_matched() {
        let f = arc(Matched::new(c("12"), c("21"), 10).unwrap());
        let g = Interleave::new(2, f).unwrap();
        assert_eq!(g.pair(), (c("1122"), c("2211")));
        let report = validate(&g, 10);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn iota_lift_of_reverse() {
        let iota = IotaMap::new(vec![3, 5, 8]).unwrap();
        let g = IotaLift::new(iota, arc(Reverse::new(c("132")))).unwrap();
        assert_eq!(g.pair(), (c("385"), c("583")));
        assert_eq!(g.kind(), WitnessKind::Wilf);
        assert!(validate(&g, 16).passed());
    }

    #[test]
    fn validation_reports_failures() {
        struct Bogus;
        impl Witness for Bogus {
            fn describe(&self) -> String {
                "bogus".into()
            }
            fn pair(&self) -> (Composition, Composition) {
                ("12".parse().unwrap(), "21".parse().unwrap())
            }
            fn kind(&self) -> WitnessKind {
                WitnessKind::Strong
            }
            fn is_rearrangement(&self) -> bool {
                true
            }
            fn apply(&self, w: &Composition) -> Result<Composition> {
                Ok(w.clone())
            }
        }
        let r = validate(&Bogus, 5);
        assert_eq!(r.failure.unwrap().0, "12");
    }
}
