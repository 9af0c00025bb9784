//! Sequence acceleration for partial sums.

/// Iterated Aitken table over a window of partial sums.
#[derive(Debug, Clone, Default)]
pub struct AccelerationState {
    pub partial_sums: Vec<f64>,
    /// Column j holds the j-times accelerated sequence.
    pub table: Vec<Vec<f64>>,
}

impl AccelerationState {
    pub fn push(&mut self, s: f64) {
        self.partial_sums.push(s);
    }

    /// Rebuilds the table from the last `window` sums and returns (estimate, error).
    pub fn extrapolate(&mut self, window: usize, max_depth: usize) -> (f64, f64) {
        let n = self.partial_sums.len();
        let start = n.saturating_sub(window);
        let (table, est, err) = aitken_table(&self.partial_sums[start..], max_depth);
        self.table = table;
        (est, err)
    }
}

fn aitken_table(seq: &[f64], max_depth: usize) -> (Vec<Vec<f64>>, f64, f64) {
    let mut table = vec![seq.to_vec()];
    loop {
        let col = table.last().unwrap();
        if col.len() < 3 || table.len() > max_depth {
            break;
        }
        let mut next = Vec::with_capacity(col.len() - 2);
        let mut noisy = false;
        for k in 0..col.len() - 2 {
            let d1 = col[k + 1] - col[k];
            let d2 = col[k + 2] - col[k + 1];
            let den = d2 - d1;
            let scale = col[k + 2].abs().max(1e-300);
            if den == 0.0 || den.abs() < 1e-15 * scale || d2.abs() < 4.0 * f64::EPSILON * scale {
                noisy = true;
                break;
            }
            next.push(col[k + 2] - d2 * d2 / den);
        }
        if noisy || next.is_empty() {
            break;
        }
        table.push(next);
    }
    // estimate from the deepest column, error from its last difference and the
    // distance to the column above
    let depth = table.len() - 1;
    let col = &table[depth];
    let est = *col.last().unwrap();
    let mut err = if col.len() >= 2 { (col[col.len() - 1] - col[col.len() - 2]).abs() } else { f64::INFINITY };
    if depth >= 1 {
        let above = &table[depth - 1];
        err = err.max((est - above.last().unwrap()).abs() * 0.1);
        if col.len() < 2 {
            err = (est - above.last().unwrap()).abs();
        }
    } else if col.len() >= 2 {
        err = (col[col.len() - 1] - col[col.len() - 2]).abs();
    }
    (table, est, err)
}

/// Iterated Aitken extrapolation of a partial-sum sequence: (estimate, error).
pub fn aitken_iterated(seq: &[f64], max_depth: usize) -> (f64, f64) {
    if seq.is_empty() {
        return (0.0, f64::INFINITY);
    }
    let (_, est, err) = aitken_table(seq, max_depth);
    (est, err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accelerates_alternating_harmonic() {
        let mut s = 0.0;
        let mut seq = Vec::new();
        for n in 1..=25 {
            s += if n % 2 == 1 { 1.0 } else { -1.0 } / n as f64;
            seq.push(s);
        }
        let (est, err) = aitken_iterated(&seq, 12);
        assert!((est - 2f64.ln()).abs() < 1e-12, "{est}");
        assert!(err < 1e-9);
        assert!((est - 2f64.ln()).abs() <= err.max(1e-15));
    }

    #[test]
    fn geometric_is_exact_after_one_step() {
        let seq: Vec<f64> = (0..5).map(|k| 1.0 - 0.5f64.powi(k + 1)).collect();
        let (est, _) = aitken_iterated(&seq, 12);
        assert!((est - 1.0).abs() < 1e-15);
    }

    #[test]
    fn state_keeps_table() {
        let mut st = AccelerationState::default();
        for k in 0..9 {
            st.push(1.0 - (-0.5f64).powi(k + 1));
        }
        let (est, _) = st.extrapolate(25, 12);
        assert!((est - 1.0).abs() < 1e-14);
        assert!(st.table.len() >= 2);
    }
}
