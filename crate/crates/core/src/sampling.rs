//! Parameter grids and seeded random parameter samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactalg::rational::from_f64_significant;
use crate::models::ParameterSet;

/// Significant decimal digits kept when a float becomes an exact parameter.
pub const SAMPLE_DIGITS: usize = 6;

#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Axis {
    pub fn value(&self, k: usize, log: bool) -> f64 {
        if self.count <= 1 {
            return self.lo;
        }
        let t = k as f64 / (self.count - 1) as f64;
        if log {
            10f64.powf(self.lo.log10() + t * (self.hi.log10() - self.lo.log10()))
        } else {
            self.lo + t * (self.hi - self.lo)
        }
    }
}

/// Cartesian grid; the last axis varies fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamGrid {
    pub axes: Vec<Axis>,
    pub log: bool,
}

impl ParamGrid {
    /// `"s:1e-2:1e2:10,b:1e-2:1e2:10"` as `name:lo:hi:count` items.
    pub fn parse(spec: &str, log: bool) -> Result<ParamGrid> {
        let mut axes = Vec::new();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let parts: Vec<&str> = item.split(':').collect();
            if parts.len() != 4 {
                return Err(Error::Parse(format!("grid axis {item:?} is not name:lo:hi:count")));
            }
            let num = |s: &str| s.trim().parse::<f64>().map_err(|e| Error::Parse(format!("{s:?}: {e}")));
            let (lo, hi) = (num(parts[1])?, num(parts[2])?);
            let count: usize = parts[3].trim().parse().map_err(|e| Error::Parse(format!("{:?}: {e}", parts[3])))?;
            if count == 0 || !(lo <= hi) || (log && lo <= 0.0) {
                return Err(Error::Parse(format!("invalid grid axis {item:?}")));
            }
            axes.push(Axis { name: parts[0].trim().to_string(), lo, hi, count });
        }
        if axes.is_empty() {
            return Err(Error::Parse("empty grid".into()));
        }
        Ok(ParamGrid { axes, log })
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Multi-index of flat index `i`.
    pub fn index(&self, mut i: usize) -> Vec<usize> {
        let mut idx = vec![0; self.axes.len()];
        for (k, a) in self.axes.iter().enumerate().rev() {
            idx[k] = i % a.count;
            i /= a.count;
        }
        idx
    }

    /// Parameters at flat index `i`, on top of `base`.
    pub fn point(&self, i: usize, base: &ParameterSet) -> Result<ParameterSet> {
        let mut p = base.clone();
        for (a, k) in self.axes.iter().zip(self.index(i)) {
            p.set(&a.name, from_f64_significant(a.value(k, self.log), SAMPLE_DIGITS)?);
        }
        Ok(p)
    }

    /// Pairs of flat indices that differ by one step along one axis.
    pub fn neighbours(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut stride = 1;
        let strides: Vec<usize> = self
            .axes
            .iter()
            .rev()
            .map(|a| {
                let s = stride;
                stride *= a.count;
                s
            })
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .collect();
        for i in 0..self.len() {
            let idx = self.index(i);
            for (k, a) in self.axes.iter().enumerate() {
                if idx[k] + 1 < a.count {
                    out.push((i, i + strides[k]));
                }
            }
        }
        out
    }
}

/// `n` parameter sets with every named value log-uniform in `[lo, hi]`,
/// rounded to [`SAMPLE_DIGITS`] significant digits. Deterministic in `seed`.
pub fn log_uniform_samples(names: &[&str], lo: f64, hi: f64, n: usize, seed: u64) -> Result<Vec<ParameterSet>> {
    if !(lo > 0.0 && lo <= hi) {
        return Err(Error::Domain(format!("invalid sampling range [{lo}, {hi}]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, b) = (lo.log10(), hi.log10());
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut p = ParameterSet::new();
        for name in names {
            let e: f64 = if a < b { rng.gen_range(a..b) } else { a };
            let v = from_f64_significant(10f64.powf(e).clamp(lo, hi), SAMPLE_DIGITS)?;
            p.set(name, v);
        }
        out.push(p);
    }
    Ok(out)
}

/// `"1e-3:1e3"`.
pub fn parse_range(text: &str) -> Result<(f64, f64)> {
    let (a, b) = text.split_once(':').ok_or_else(|| Error::Parse(format!("range {text:?} is not lo:hi")))?;
    let p = |s: &str| s.trim().parse::<f64>().map_err(|e| Error::Parse(format!("{s:?}: {e}")));
    Ok((p(a)?, p(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::rat;

    #[test]
    fn grid_points_and_neighbours() {
        let g = ParamGrid::parse("s:1e-2:1e2:5,b:1:2:2", true).unwrap();
        assert_eq!(g.len(), 10);
        assert_eq!(g.index(3), vec![1, 1]);
        let p = g.point(0, &ParameterSet::new()).unwrap();
        assert_eq!(p.get("s").unwrap(), &rat(1, 100));
        let p = g.point(9, &ParameterSet::new()).unwrap();
        assert_eq!(p.get("s").unwrap(), &rat(100, 1));
        assert_eq!(p.get("b").unwrap(), &rat(2, 1));
        // 4 steps along s for each of 2 b values, 1 step along b for 5 s values
        assert_eq!(g.neighbours().len(), 8 + 5);
        assert!(ParamGrid::parse("s:1:2", false).is_err());
        assert!(ParamGrid::parse("s:0:2:3", true).is_err());
    }

    #[test]
    fn samples_are_seeded() {
        let a = log_uniform_samples(&["s", "b"], 1e-3, 1e3, 20, 42).unwrap();
        let b = log_uniform_samples(&["s", "b"], 1e-3, 1e3, 20, 42).unwrap();
        let c = log_uniform_samples(&["s", "b"], 1e-3, 1e3, 20, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        for p in &a {
            let s = p.get_f64("s").unwrap();
            assert!((1e-3..=1e3).contains(&s));
        }
    }
}
