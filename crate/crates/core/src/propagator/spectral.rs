use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::primitives::{Grid, WaveFunction};
use crate::propagator::Fft;

/// Angular wavenumbers of the DFT bins in wrap-around order:
/// `k_j = 2πj/(n·dx)` for `j < n/2`, `2π(j − n)/(n·dx)` otherwise.
pub fn wavenumbers(grid: &Grid) -> Vec<f64> {
    let n = grid.len();
    let dk = std::f64::consts::TAU / (n as f64 * grid.dx());
    (0..n)
        .map(|j| {
            if j < n / 2 {
                j as f64 * dk
            } else {
                (j as f64 - n as f64) * dk
            }
        })
        .collect()
}

/// FFT plan and wavenumbers for one grid.
#[derive(Debug, Clone)]
pub struct Spectral {
    fft: Fft,
    k: Vec<f64>,
    grid: Grid,
}

impl Spectral {
    pub fn new(grid: &Grid) -> Result<Self> {
        Ok(Self {
            fft: Fft::new(grid.len())?,
            k: wavenumbers(grid),
            grid: *grid,
        })
    }

    pub fn fft(&self) -> &Fft {
        &self.fft
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn wavenumbers(&self) -> &[f64] {
        &self.k
    }

    fn check(&self, psi: &WaveFunction) -> Result<()> {
        if *psi.grid() != self.grid {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    /// Multiplies the spectrum of `values` by `symbol(k)`.
    fn apply_symbol(
        &self,
        values: &[Complex64],
        symbol: impl Fn(usize, f64) -> Complex64,
    ) -> Vec<Complex64> {
        let mut buf = values.to_vec();
        self.fft.forward(&mut buf);
        for (j, (v, &k)) in buf.iter_mut().zip(&self.k).enumerate() {
            *v *= symbol(j, k);
        }
        self.fft.inverse(&mut buf);
        buf
    }

    /// `dψ/dx`; the unpaired Nyquist bin is dropped.
    pub fn derivative(&self, psi: &WaveFunction) -> Result<WaveFunction> {
        self.check(psi)?;
        let nyquist = self.grid.len() / 2;
        let d = self.apply_symbol(psi.values(), |j, k| {
            if j == nyquist {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(0.0, k)
            }
        });
        psi.with_values(d)
    }

    /// `Hψ = −(ħ²/2m)ψ'' + ½mω²x²ψ`.
    pub fn hamiltonian(&self, psi: &WaveFunction) -> Result<WaveFunction> {
        self.check(psi)?;
        let p = psi.params();
        let kin = p.hbar() * p.hbar() / (2.0 * p.mass());
        let spring = 0.5 * p.mass() * p.omega() * p.omega();
        let mut out = self.apply_symbol(psi.values(), |_, k| Complex64::new(kin * k * k, 0.0));
        for ((h, v), x) in out.iter_mut().zip(psi.values()).zip(self.grid.points()) {
            *h += v * (spring * x * x);
        }
        psi.with_values(out)
    }
}

/// First and second moments of position and momentum, normalized by `⟨ψ|ψ⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub x_mean: f64,
    pub x_spread: f64,
    pub p_mean: f64,
    pub p_spread: f64,
}

/// Quadrature moments; momentum moments use the spectral derivative,
/// `⟨p⟩ = Re⟨ψ|−iħψ'⟩` and `⟨p²⟩ = ħ²⟨ψ'|ψ'⟩`.
pub fn moments(psi: &WaveFunction, spectral: &Spectral) -> Result<Moments> {
    let dpsi = spectral.derivative(psi)?;
    let hbar = psi.params().hbar();
    let (mut n0, mut x1, mut x2, mut p1, mut p2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for ((v, d), x) in psi
        .values()
        .iter()
        .zip(dpsi.values())
        .zip(psi.grid().points())
    {
        let rho = v.norm_sqr();
        n0 += rho;
        x1 += x * rho;
        x2 += x * x * rho;
        // conj(ψ)·(−iħψ') real part = ħ·Im(conj(ψ)ψ')
        p1 += (v.conj() * d).im;
        p2 += d.norm_sqr();
    }
    if n0 == 0.0 {
        return Err(Error::InvalidArgument(
            "moments of the zero function".into(),
        ));
    }
    let x_mean = x1 / n0;
    let p_mean = hbar * p1 / n0;
    Ok(Moments {
        x_mean,
        x_spread: (x2 / n0 - x_mean * x_mean).max(0.0).sqrt(),
        p_mean,
        p_spread: (hbar * hbar * p2 / n0 - p_mean * p_mean).max(0.0).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primitives::{make_grid, PhysicalParams};

    #[test]
    fn wavenumber_layout() {
        let g = Grid::new(0.0, 16.0 * std::f64::consts::TAU, 16).unwrap();
        let k = wavenumbers(&g);
        let expected = [
            0., 1., 2., 3., 4., 5., 6., 7., -8., -7., -6., -5., -4., -3., -2., -1.,
        ];
        for (a, b) in k.iter().zip(expected) {
            assert!((a - b / 16.0).abs() < 1e-15);
        }
    }

    #[test]
    fn derivative_of_gaussian() {
        let p = PhysicalParams::oscillator_units();
        let g = make_grid(&p, 0.0, 12.0, 256).unwrap();
        let psi = WaveFunction::from_fn(g, p, |x| Complex64::new((-0.5 * x * x).exp(), 0.0));
        let s = Spectral::new(&g).unwrap();
        let d = s.derivative(&psi).unwrap();
        for (x, v) in g.points().zip(d.values()) {
            assert!((v - Complex64::new(-x * (-0.5 * x * x).exp(), 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn ground_state_is_an_eigenfunction() {
        let p = PhysicalParams::new(2.0, 3.0, 0.5).unwrap();
        let g = make_grid(&p, 0.0, 12.0, 256).unwrap();
        let amp = p.ground_amplitude();
        let c = p.mass() * p.omega() / (2.0 * p.hbar());
        let psi = WaveFunction::from_fn(g, p, |x| Complex64::new(amp * (-c * x * x).exp(), 0.0));
        let s = Spectral::new(&g).unwrap();
        let h = s.hamiltonian(&psi).unwrap();
        let e0 = 0.5 * p.energy_quantum();
        for (a, b) in h.values().iter().zip(psi.values()) {
            assert!((a - b * e0).norm() < 1e-12);
        }
    }

    #[test]
    fn grid_mismatch() {
        let p = PhysicalParams::oscillator_units();
        let s = Spectral::new(&make_grid(&p, 0.0, 8.0, 64).unwrap()).unwrap();
        let psi = WaveFunction::zeros(make_grid(&p, 0.0, 8.0, 128).unwrap(), p);
        assert_eq!(s.derivative(&psi).unwrap_err(), Error::GridMismatch);
        assert!(moments(&WaveFunction::zeros(*s.grid(), p), &s).is_err());
    }
}
