//! Lascoux–Schützenberger charge and Kostka–Foulkes polynomials.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::partitions::{enumerate_ssyt, gaussian_binomial, Partition, Tableau};
use crate::rational::{pow, Rational};

/// Charge of a word whose content is a partition.
///
/// Standard subwords are peeled off repeatedly: scanning leftwards from the
/// right end (cyclically) pick a 1, then a 2, and so on. Inside a subword the
/// index rises by one each time r+1 sits to the right of r.
pub fn charge_word(word: &[usize]) -> Result<usize> {
    let top = word.iter().copied().max().unwrap_or(0);
    let mut counts = vec![0usize; top];
    for &x in word {
        if x == 0 {
            return Err(Error::InvalidPartition("word letters must be positive".into()));
        }
        counts[x - 1] += 1;
    }
    if counts.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidPartition(format!("content {counts:?} is not a partition")));
    }
    let mut alive = vec![true; word.len()];
    let mut remaining = word.len();
    let n = word.len();
    let mut total = 0usize;
    while remaining > 0 {
        let mut pos = n;
        let mut letter = 1;
        let mut index = 0usize;
        loop {
            // search leftwards from pos-1, wrapping around
            let mut found = None;
            for step in 1..=n {
                let i = (pos + n - step) % n;
                if alive[i] && word[i] == letter {
                    found = Some(i);
                    break;
                }
            }
            let Some(i) = found else { break };
            if letter > 1 && i > pos {
                index += 1;
            }
            total += index;
            alive[i] = false;
            remaining -= 1;
            pos = i;
            letter += 1;
        }
    }
    Ok(total)
}

pub fn charge(t: &Tableau) -> Result<usize> {
    charge_word(&t.reading_word())
}

/// Charge histogram of SSYT(λ, μ): entry c counts tableaux with charge c.
pub fn charge_histogram(shape: &Partition, content: &Partition) -> Result<Vec<u64>> {
    let mut hist = Vec::new();
    for t in enumerate_ssyt(shape, content)? {
        let c = charge(&t)?;
        if hist.len() <= c {
            hist.resize(c + 1, 0);
        }
        hist[c] += 1;
    }
    Ok(hist)
}

/// Evaluates Σ_c hist[c]·t^c.
pub fn eval_histogram(hist: &[u64], t: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for &c in hist.iter().rev() {
        acc = acc * t + Rational::from_integer(c.into());
    }
    acc
}

/// K_{λμ}(t) for a single pair.
pub fn kostka_foulkes_entry(shape: &Partition, content: &Partition, t: &Rational) -> Result<Rational> {
    Ok(eval_histogram(&charge_histogram(shape, content)?, t))
}

/// K_{λμ}(t) for the hook λ = (n−r, 1^r):
/// t^{n(μ) − rℓ + r(r+1)/2}·[ℓ−1 choose r]_t with ℓ = ℓ(μ).
pub fn kostka_foulkes_hook(r: usize, content: &Partition, t: &Rational) -> Result<Rational> {
    let l = content.len();
    if r >= l.max(1) {
        return Ok(Rational::zero());
    }
    let e = content.n_stat() as i64 - (r * l) as i64 + (r * (r + 1) / 2) as i64;
    Ok(pow(t, e) * gaussian_binomial(l - 1, r, t)?)
}
