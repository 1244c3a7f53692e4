//! Thoma parameters, ground parameters and power-sum specializations.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{pow, render, Rational};

impl std::fmt::Display for ThomaSpec {
    /// Form "α=(1/2,1/2*);β=();γ=0", a trailing `*` marking a geometric family.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let list = |es: &[ThomaEntry]| {
            es.iter()
                .map(|e| format!("{}{}", render(&e.value), if e.geometric { "*" } else { "" }))
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "α=({});β=({});γ={}", list(&self.alphas), list(&self.betas), render(&self.gamma))
    }
}

/// Ground field size `q` and `t = 1/q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundParams {
    pub q: Rational,
    pub t: Rational,
}

impl GroundParams {
    /// Accepts any rational `q >= 2`.
    pub fn new(q: Rational) -> Result<Self> {
        if q < Rational::from_integer(2.into()) {
            return Err(Error::OutOfRange(format!("q = {} must be >= 2", render(&q))));
        }
        let t = q.recip();
        Ok(GroundParams { q, t })
    }

    pub fn from_int(q: u32) -> Result<Self> {
        Self::new(Rational::from_integer(q.into()))
    }

    /// Ground parameters at `q^d`.
    pub fn power(&self, d: usize) -> GroundParams {
        GroundParams { q: pow(&self.q, d as i64), t: pow(&self.t, d as i64) }
    }
}

/// One α or β entry: an atom, or a geometric family `(1−t)t^j·a`, j ≥ 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThomaEntry {
    #[serde(with = "crate::io::rational_str")]
    pub value: Rational,
    #[serde(default)]
    pub geometric: bool,
}

impl ThomaEntry {
    pub fn atom(value: Rational) -> Self {
        ThomaEntry { value, geometric: false }
    }

    pub fn geometric(value: Rational) -> Self {
        ThomaEntry { value, geometric: true }
    }
}

/// Thoma parameters (α; β; γ) with exact rational entries. Masses sum to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThomaSpec {
    alphas: Vec<ThomaEntry>,
    betas: Vec<ThomaEntry>,
    gamma: Rational,
}

impl ThomaSpec {
    pub fn new(alphas: Vec<ThomaEntry>, betas: Vec<ThomaEntry>, gamma: Rational) -> Result<Self> {
        for e in alphas.iter().chain(&betas) {
            if !e.value.is_positive() {
                return Err(Error::InvalidSpec(format!("entry {} is not positive", render(&e.value))));
            }
        }
        if gamma.is_negative() {
            return Err(Error::InvalidSpec("gamma is negative".into()));
        }
        for (name, list) in [("alpha", &alphas), ("beta", &betas)] {
            let atoms: Vec<&Rational> = list.iter().filter(|e| !e.geometric).map(|e| &e.value).collect();
            if atoms.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidSpec(format!("{name} atoms are not weakly decreasing")));
            }
        }
        let total: Rational = alphas.iter().chain(&betas).map(|e| e.value.clone()).sum::<Rational>() + &gamma;
        if !total.is_one() {
            return Err(Error::InvalidSpec(format!("total mass is {}, expected 1", render(&total))));
        }
        Ok(ThomaSpec { alphas, betas, gamma })
    }

    /// Atom-only spec with γ = 1 − Σα − Σβ.
    pub fn atoms(alphas: &[Rational], betas: &[Rational]) -> Result<Self> {
        let used: Rational = alphas.iter().chain(betas).cloned().sum();
        Self::new(
            alphas.iter().cloned().map(ThomaEntry::atom).collect(),
            betas.iter().cloned().map(ThomaEntry::atom).collect(),
            Rational::one() - used,
        )
    }

    /// α = (1): the trivial character.
    pub fn trivial() -> Self {
        Self::atoms(&[Rational::one()], &[]).unwrap()
    }

    /// Geometric α = (1): the Haar measure.
    pub fn haar() -> Self {
        Self::new(vec![ThomaEntry::geometric(Rational::one())], vec![], Rational::zero()).unwrap()
    }

    pub fn alphas(&self) -> &[ThomaEntry] {
        &self.alphas
    }

    pub fn betas(&self) -> &[ThomaEntry] {
        &self.betas
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    pub fn has_geometric_alpha(&self) -> bool {
        self.alphas.iter().any(|e| e.geometric)
    }

    pub fn has_geometric(&self) -> bool {
        self.alphas.iter().chain(&self.betas).any(|e| e.geometric)
    }

    /// Total α mass.
    pub fn alpha_mass(&self) -> Rational {
        self.alphas.iter().map(|e| e.value.clone()).sum()
    }

    /// `(#α atoms, #β atoms)` when the spec is atoms only with γ = 0; then
    /// s_λ vanishes unless λ fits in this hook.
    pub fn hook_bound(&self) -> Option<(usize, usize)> {
        if self.has_geometric() || !self.gamma.is_zero() {
            None
        } else {
            Some((self.alphas.len(), self.betas.len()))
        }
    }

    /// Every α atom becomes a geometric family with ratio t.
    pub fn geometric_merge(&self) -> Result<ThomaSpec> {
        if self.has_geometric_alpha() {
            return Err(Error::InvalidSpec("alpha already contains geometric entries".into()));
        }
        let alphas = self.alphas.iter().map(|e| ThomaEntry::geometric(e.value.clone())).collect();
        ThomaSpec::new(alphas, self.betas.clone(), self.gamma.clone())
    }

    /// Every β atom becomes a geometric family with ratio t.
    pub fn geometric_merge_beta(&self) -> Result<ThomaSpec> {
        if self.betas.iter().any(|e| e.geometric) {
            return Err(Error::InvalidSpec("beta already contains geometric entries".into()));
        }
        let betas = self.betas.iter().map(|e| ThomaEntry::geometric(e.value.clone())).collect();
        ThomaSpec::new(self.alphas.clone(), betas, self.gamma.clone())
    }

    /// Standard evaluation functional at ratio `t`.
    pub fn at(&self, t: &Rational) -> SpecAt<'_> {
        SpecAt { spec: self, t: t.clone(), mode: SuperMode::Schur, gamma_in_p1: true }
    }

    /// Hall–Littlewood super evaluation functional at ratio `t`.
    pub fn at_hl(&self, t: &Rational) -> SpecAt<'_> {
        SpecAt { spec: self, t: t.clone(), mode: SuperMode::HallLittlewood, gamma_in_p1: true }
    }
}

/// Anything that assigns values to the power sums p_1, p_2, …
pub trait PowerSums: Sync {
    fn power_sum(&self, m: usize) -> Rational;

    /// `[p_1, …, p_n]` (index 0 holds p_1).
    fn table(&self, n: usize) -> Vec<Rational> {
        (1..=n).map(|m| self.power_sum(m)).collect()
    }
}

/// How the β side enters the power sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuperMode {
    /// p_m gets −(−b)^m per β atom.
    Schur,
    /// p_m gets −(−b)^m (1−t)^m/(1−t^m) per β atom.
    HallLittlewood,
}

/// A Thoma spec bound to a ratio `t`.
#[derive(Clone, Debug)]
pub struct SpecAt<'a> {
    pub spec: &'a ThomaSpec,
    pub t: Rational,
    pub mode: SuperMode,
    pub gamma_in_p1: bool,
}

impl SpecAt<'_> {
    /// γ does not enter any power sum.
    pub fn without_gamma(mut self) -> Self {
        self.gamma_in_p1 = false;
        self
    }
}

fn geometric_factor(t: &Rational, m: usize) -> Rational {
    let one = Rational::one();
    pow(&(&one - t), m as i64) / (&one - pow(t, m as i64))
}

impl PowerSums for SpecAt<'_> {
    fn power_sum(&self, m: usize) -> Rational {
        assert!(m >= 1);
        let g = geometric_factor(&self.t, m);
        let mut acc = Rational::zero();
        if m == 1 && self.gamma_in_p1 {
            acc += self.spec.gamma();
        }
        for e in self.spec.alphas() {
            let v = pow(&e.value, m as i64);
            acc += if e.geometric { v * &g } else { v };
        }
        for e in self.spec.betas() {
            let mut v = pow(&-&e.value, m as i64);
            if e.geometric {
                v *= &g;
            }
            if self.mode == SuperMode::HallLittlewood {
                v *= &g;
            }
            acc -= v;
        }
        acc
    }
}

/// The functional `E_d` with `p_m(E_d) = p_{md}(inner)`.
pub struct PowerSubstitution<'a, P: PowerSums + ?Sized> {
    pub inner: &'a P,
    pub d: usize,
}

pub fn power_substitution<P: PowerSums + ?Sized>(inner: &P, d: usize) -> PowerSubstitution<'_, P> {
    assert!(d >= 1);
    PowerSubstitution { inner, d }
}

impl<P: PowerSums + ?Sized> PowerSums for PowerSubstitution<'_, P> {
    fn power_sum(&self, m: usize) -> Rational {
        self.inner.power_sum(m * self.d)
    }
}

/// Explicit power-sum values, e.g. from a finite variable list.
#[derive(Clone, Debug)]
pub struct FixedPowerSums(pub Vec<Rational>);

impl PowerSums for FixedPowerSums {
    fn power_sum(&self, m: usize) -> Rational {
        self.0[m - 1].clone()
    }
}

/// Power sums of a finite alphabet with positive variables `xs` and
/// "negative" variables `ys` (super convention: p_m = Σx^m − Σ(−y)^m).
pub fn finite_alphabet(xs: &[Rational], ys: &[Rational], n: usize) -> FixedPowerSums {
    FixedPowerSums(
        (1..=n)
            .map(|m| {
                let a: Rational = xs.iter().map(|x| pow(x, m as i64)).sum();
                let b: Rational = ys.iter().map(|y| pow(&-y, m as i64)).sum();
                a - b
            })
            .collect(),
    )
}

/// The sorted prefix of the merged geometric α families `(1−t)t^j α_i`
/// (length `k_max`), and the β list unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedFrequencies {
    pub rows: Vec<Rational>,
    pub columns: Vec<Rational>,
}

pub fn expected_frequency_multiset(spec: &ThomaSpec, t: &Rational, k_max: usize) -> Result<ExpectedFrequencies> {
    if spec.has_geometric_alpha() {
        return Err(Error::InvalidSpec("expected frequencies need atom alphas".into()));
    }
    let one = Rational::one();
    let mut heads: Vec<Rational> = spec.alphas().iter().map(|e| (&one - t) * &e.value).collect();
    let mut rows = Vec::with_capacity(k_max);
    while rows.len() < k_max && !heads.is_empty() {
        let (i, _) = heads.iter().enumerate().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0))).unwrap();
        rows.push(heads[i].clone());
        heads[i] *= t;
    }
    let mut columns: Vec<Rational> = spec.betas().iter().map(|e| e.value.clone()).collect();
    columns.truncate(k_max);
    Ok(ExpectedFrequencies { rows, columns })
}
