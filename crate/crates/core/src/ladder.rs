//! Piecewise series along an interval.
//!
//! A [`Ladder`] is a list of expansion centers spaced at most
//! [`LADDER_SPACING`] apart, endpoints included. Evaluation at a (complex)
//! point uses the center nearest to its real part, so every real point is
//! within a quarter of the spacing of some center.

use crate::error::Result;
use crate::lorentz::LorentzVec;
use crate::series::{AnalyticCurve3, ComplexVal, PowerSeries};

pub const LADDER_SPACING: f64 = 0.5;

#[derive(Clone, Debug, PartialEq)]
pub struct Ladder {
    start: f64,
    step: f64,
    centers: Vec<f64>,
}

impl Ladder {
    /// Centers `a, a + h, ..., b` with `h = (b - a) / ceil((b - a) / 0.5)`.
    pub fn over(a: f64, b: f64) -> Ladder {
        Ladder::with_spacing(a, b, LADDER_SPACING)
    }

    pub fn with_spacing(a: f64, b: f64, spacing: f64) -> Ladder {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let len = b - a;
        if len == 0.0 {
            return Ladder {
                start: a,
                step: 0.0,
                centers: vec![a],
            };
        }
        let pieces = (len / spacing).ceil().max(1.0) as usize;
        let step = len / pieces as f64;
        let mut centers: Vec<f64> = (0..pieces).map(|k| a + k as f64 * step).collect();
        centers.push(b);
        Ladder {
            start: a,
            step,
            centers,
        }
    }

    pub fn centers(&self) -> &[f64] {
        &self.centers
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Index of the center nearest to `x`; points beyond the ends map to the
    /// end centers.
    pub fn nearest(&self, x: f64) -> usize {
        if self.step == 0.0 || x.is_nan() {
            return 0;
        }
        let k = ((x - self.start) / self.step).round();
        k.clamp(0.0, (self.centers.len() - 1) as f64) as usize
    }

    /// Midpoint between centers `k - 1` and `k`.
    pub fn junction(&self, k: usize) -> f64 {
        0.5 * (self.centers[k - 1] + self.centers[k])
    }
}

/// Scalar series on a ladder.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseSeries {
    ladder: Ladder,
    pieces: Vec<PowerSeries>,
}

impl PiecewiseSeries {
    pub fn build(ladder: Ladder, mut f: impl FnMut(f64) -> Result<PowerSeries>) -> Result<Self> {
        let pieces = ladder.centers().iter().map(|&c| f(c)).collect::<Result<Vec<_>>>()?;
        Ok(PiecewiseSeries { ladder, pieces })
    }

    pub fn ladder(&self) -> &Ladder {
        &self.ladder
    }

    pub fn pieces(&self) -> &[PowerSeries] {
        &self.pieces
    }

    pub fn piece_near(&self, x: f64) -> &PowerSeries {
        &self.pieces[self.ladder.nearest(x)]
    }

    pub fn eval_real(&self, t: f64) -> Result<f64> {
        self.piece_near(t).eval_real(t)
    }

    pub fn eval_at(&self, z: ComplexVal) -> Result<ComplexVal> {
        self.piece_near(z.re).eval_at(z)
    }
}

/// R^3-valued series on a ladder.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseCurve {
    ladder: Ladder,
    pieces: Vec<AnalyticCurve3>,
}

impl PiecewiseCurve {
    pub fn build(ladder: Ladder, mut f: impl FnMut(f64) -> Result<AnalyticCurve3>) -> Result<Self> {
        let pieces = ladder.centers().iter().map(|&c| f(c)).collect::<Result<Vec<_>>>()?;
        Ok(PiecewiseCurve { ladder, pieces })
    }

    pub fn ladder(&self) -> &Ladder {
        &self.ladder
    }

    pub fn pieces(&self) -> &[AnalyticCurve3] {
        &self.pieces
    }

    pub fn piece_near(&self, x: f64) -> &AnalyticCurve3 {
        &self.pieces[self.ladder.nearest(x)]
    }

    pub fn is_exact_zero(&self) -> bool {
        self.pieces.iter().all(AnalyticCurve3::is_exact_zero)
    }

    pub fn eval_real(&self, t: f64) -> Result<LorentzVec> {
        self.piece_near(t).eval_real(t)
    }

    pub fn eval_at(&self, z: ComplexVal) -> Result<[ComplexVal; 3]> {
        self.piece_near(z.re).eval_at(z)
    }

    /// Piecewise map of every piece.
    pub fn map(&self, f: impl Fn(&AnalyticCurve3) -> Result<AnalyticCurve3>) -> Result<Self> {
        Ok(PiecewiseCurve {
            ladder: self.ladder.clone(),
            pieces: self.pieces.iter().map(f).collect::<Result<Vec<_>>>()?,
        })
    }

    /// Antiderivative whose value at the first center is `start`; the
    /// constant of every later piece is fixed by continuity at the junction
    /// with its predecessor.
    pub fn antiderivative(&self, start: LorentzVec) -> Result<Self> {
        let mut pieces: Vec<AnalyticCurve3> = Vec::with_capacity(self.pieces.len());
        for (k, p) in self.pieces.iter().enumerate() {
            let mut anti = p.antiderivative(LorentzVec::ZERO);
            if k == 0 {
                anti = anti.add_constant(start);
            } else {
                let m = self.ladder.junction(k);
                let offset = pieces[k - 1].eval_real(m)? - anti.eval_real(m)?;
                anti = anti.add_constant(offset);
            }
            pieces.push(anti);
        }
        Ok(PiecewiseCurve {
            ladder: self.ladder.clone(),
            pieces,
        })
    }
}
