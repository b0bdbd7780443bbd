//! Small FFT helpers on top of rustfft with thread-local planners.

use std::cell::RefCell;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// In-place 2-D FFT over a row-major `width x height` buffer. The inverse
/// transform is normalized by `1 / (width * height)`.
pub(crate) fn fft2d(data: &mut [Complex<f64>], width: usize, height: usize, inverse: bool) {
    assert_eq!(data.len(), width * height);
    PLANNER.with(|p| {
        let mut planner = p.borrow_mut();
        let row_fft = if inverse {
            planner.plan_fft_inverse(width)
        } else {
            planner.plan_fft_forward(width)
        };
        let col_fft = if inverse {
            planner.plan_fft_inverse(height)
        } else {
            planner.plan_fft_forward(height)
        };

        for row in data.chunks_exact_mut(width) {
            row_fft.process(row);
        }
        let mut col = vec![Complex::default(); height];
        for x in 0..width {
            for y in 0..height {
                col[y] = data[y * width + x];
            }
            col_fft.process(&mut col);
            for y in 0..height {
                data[y * width + x] = col[y];
            }
        }
    });
    if inverse {
        let scale = 1.0 / (width * height) as f64;
        for v in data.iter_mut() {
            *v *= scale;
        }
    }
}

pub(crate) fn to_complex(values: &[f64]) -> Vec<Complex<f64>> {
    values.iter().map(|&v| Complex::new(v, 0.0)).collect()
}

/// Forward 1-D FFT of a real signal; returns the full complex spectrum.
pub(crate) fn fft1d_forward(values: &[f64]) -> Vec<Complex<f64>> {
    let mut buf = to_complex(values);
    PLANNER.with(|p| {
        let fft = p.borrow_mut().plan_fft_forward(buf.len());
        fft.process(&mut buf);
    });
    buf
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_recovers_input() {
        let vals: Vec<f64> = (0..32).map(|i| (i as f64 * 0.37).sin()).collect();
        let mut buf = to_complex(&vals);
        fft2d(&mut buf, 8, 4, false);
        fft2d(&mut buf, 8, 4, true);
        for (orig, got) in vals.iter().zip(&buf) {
            assert!((orig - got.re).abs() < 1e-12);
            assert!(got.im.abs() < 1e-12);
        }
    }

    #[test]
    fn constant_input_concentrates_at_dc() {
        let mut buf = to_complex(&[0.5; 16]);
        fft2d(&mut buf, 4, 4, false);
        assert!((buf[0].re - 8.0).abs() < 1e-12);
        assert!(buf[1..].iter().all(|c| c.norm() < 1e-12));
    }
}
