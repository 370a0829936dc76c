//! Small dense determinants.

use crate::logvalue::LogValue;

/// Determinant of a row-major `n × n` matrix by LU with partial pivoting.
pub fn det(mut a: Vec<f64>, n: usize) -> f64 {
    assert_eq!(a.len(), n * n, "det: expected {n}×{n} entries");
    let mut det = 1.0;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))
            .unwrap();
        let p = a[piv * n + col];
        if p == 0.0 {
            return 0.0;
        }
        if piv != col {
            for j in 0..n {
                a.swap(piv * n + j, col * n + j);
            }
            det = -det;
        }
        det *= p;
        for i in col + 1..n {
            let f = a[i * n + col] / p;
            if f != 0.0 {
                for j in col + 1..n {
                    a[i * n + j] -= f * a[col * n + j];
                }
            }
        }
    }
    det
}

/// Determinant of a matrix of [`LogValue`] entries.
///
/// Each row is scaled by its largest magnitude so that the remaining LU runs
/// on doubles of order one; the scale factors are multiplied back in log
/// space.
pub fn det_log(a: &[LogValue], n: usize) -> LogValue {
    assert_eq!(a.len(), n * n, "det_log: expected {n}×{n} entries");
    let mut scale = LogValue::ONE;
    let mut m = Vec::with_capacity(n * n);
    for i in 0..n {
        let row = &a[i * n..(i + 1) * n];
        let big = row
            .iter()
            .copied()
            .max_by(|x, y| x.cmp_abs(y))
            .unwrap_or(LogValue::ZERO);
        if big.is_zero() {
            return LogValue::ZERO;
        }
        let inv = big.abs().recip();
        m.extend(row.iter().map(|&v| (v * inv).to_f64()));
        scale = scale * big.abs();
    }
    let d = det(m, n);
    if d == 0.0 {
        return LogValue::ZERO;
    }
    LogValue::from_f64(d) * scale
}
