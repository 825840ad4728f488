use num_complex::Complex64;

use crate::error::{Error, Result};

/// Iterative radix-2 decimation-in-time transform with unitary scaling
/// `1/√n` in both directions.
#[derive(Debug, Clone)]
pub struct Fft {
    n: usize,
    // e^{-2πik/n}, k < n/2
    twiddles: Vec<Complex64>,
    bit_reverse: Vec<usize>,
    scale: f64,
}

impl Fft {
    pub fn new(n: usize) -> Result<Self> {
        if !n.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(n));
        }
        let bits = n.trailing_zeros();
        let bit_reverse = (0..n)
            .map(|i| {
                if bits == 0 {
                    0
                } else {
                    i.reverse_bits() >> (usize::BITS - bits)
                }
            })
            .collect();
        let twiddles = (0..n / 2)
            .map(|k| Complex64::from_polar(1.0, -std::f64::consts::TAU * k as f64 / n as f64))
            .collect();
        Ok(Self {
            n,
            twiddles,
            bit_reverse,
            scale: 1.0 / (n as f64).sqrt(),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `V_k = n^{-1/2} Σ_j v_j e^{-2πijk/n}`, in place.
    pub fn forward(&self, data: &mut [Complex64]) {
        self.transform(data, false);
    }

    /// `v_j = n^{-1/2} Σ_k V_k e^{+2πijk/n}`, in place.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.transform(data, true);
    }

    fn transform(&self, data: &mut [Complex64], inverse: bool) {
        assert_eq!(data.len(), self.n, "transform length mismatch");
        for (i, &j) in self.bit_reverse.iter().enumerate() {
            if i < j {
                data.swap(i, j);
            }
        }
        let mut len = 2;
        while len <= self.n {
            let half = len / 2;
            let stride = self.n / len;
            for block in data.chunks_exact_mut(len) {
                let (lo, hi) = block.split_at_mut(half);
                for (j, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                    let w = self.twiddles[j * stride];
                    let w = if inverse { w.conj() } else { w };
                    let t = *b * w;
                    *b = *a - t;
                    *a += t;
                }
            }
            len *= 2;
        }
        for v in data.iter_mut() {
            *v *= self.scale;
        }
    }
}

pub fn fourier_transform(values: &[Complex64]) -> Result<Vec<Complex64>> {
    let fft = Fft::new(values.len())?;
    let mut out = values.to_vec();
    fft.forward(&mut out);
    Ok(out)
}

pub fn inverse_fourier_transform(values: &[Complex64]) -> Result<Vec<Complex64>> {
    let fft = Fft::new(values.len())?;
    let mut out = values.to_vec();
    fft.inverse(&mut out);
    Ok(out)
}
