//! Euclidean distance and feature transforms on binary grids
//! (Felzenszwalb & Huttenlocher lower envelope), in cell units.

/// Marker for "no feature" in [`feature_transform_rows`].
pub(crate) const NO_FEATURE: u32 = u32::MAX;

/// Nearest feature cell (row-major index into the mask) for every cell of the
/// requested rows, or [`NO_FEATURE`] when the mask has no feature.
pub(crate) fn feature_transform_rows(mask: &[bool], w: usize, h: usize, rows: std::ops::Range<usize>) -> Vec<u32> {
    debug_assert_eq!(mask.len(), w * h);
    const NONE: u32 = u32::MAX;
    // nearest feature row in the same column
    let mut near = vec![NONE; w * h];
    for y in 0..h {
        for x in 0..w {
            let i = y * w + x;
            near[i] = if mask[i] {
                y as u32
            } else if y > 0 {
                near[i - w]
            } else {
                NONE
            };
        }
    }
    for y in (0..h.saturating_sub(1)).rev() {
        for x in 0..w {
            let i = y * w + x;
            let below = near[i + w];
            if below == NONE {
                continue;
            }
            let cur = near[i];
            if cur == NONE || (below as i64 - y as i64).abs() < (cur as i64 - y as i64).abs() {
                near[i] = below;
            }
        }
    }
    let mut out = Vec::with_capacity(rows.len() * w);
    let mut f = vec![0.0f64; w];
    let mut arg = vec![0usize; w];
    let mut v = vec![0usize; w];
    let mut z = vec![0.0f64; w + 1];
    for y in rows {
        for x in 0..w {
            let r = near[y * w + x];
            f[x] = if r == NONE {
                f64::INFINITY
            } else {
                let d = r as f64 - y as f64;
                d * d
            };
        }
        if lower_envelope(&f, &mut arg, &mut v, &mut z) {
            out.extend(arg.iter().map(|&p| near[y * w + p] * w as u32 + p as u32));
        } else {
            out.extend(std::iter::repeat(NO_FEATURE).take(w));
        }
    }
    out
}

/// Squared distances to the nearest feature for the rows in `rows` (all
/// columns), `f64::INFINITY` when the mask has no feature.
pub(crate) fn squared_edt_rows(mask: &[bool], w: usize, h: usize, rows: std::ops::Range<usize>) -> Vec<f64> {
    let y0 = rows.start;
    feature_transform_rows(mask, w, h, rows)
        .into_iter()
        .enumerate()
        .map(|(k, feat)| squared_dist_to(feat, k % w, y0 + k / w, w))
        .collect()
}

/// Squared distance from cell `(x, y)` to feature index `feat`.
pub(crate) fn squared_dist_to(feat: u32, x: usize, y: usize, w: usize) -> f64 {
    if feat == NO_FEATURE {
        return f64::INFINITY;
    }
    let (fx, fy) = ((feat as usize % w) as f64, (feat as usize / w) as f64);
    let (dx, dy) = (fx - x as f64, fy - y as f64);
    dx * dx + dy * dy
}

/// 1-D transform: `arg[q]` minimizes `(q - p)² + f[p]`; infinite samples are
/// ignored. Returns false when every sample is infinite.
fn lower_envelope(f: &[f64], arg: &mut [usize], v: &mut [usize], z: &mut [f64]) -> bool {
    let n = f.len();
    let mut k: usize = 0;
    let mut any = false;
    for q in 0..n {
        if f[q].is_infinite() {
            continue;
        }
        if !any {
            any = true;
            v[0] = q;
            z[0] = f64::NEG_INFINITY;
            z[1] = f64::INFINITY;
            continue;
        }
        let qf = q as f64;
        let mut s;
        loop {
            let p = v[k];
            let pf = p as f64;
            s = ((f[q] + qf * qf) - (f[p] + pf * pf)) / (2.0 * (qf - pf));
            if s <= z[k] {
                // z[0] is -inf, so this never pops the last parabola
                k -= 1;
            } else {
                break;
            }
        }
        k += 1;
        v[k] = q;
        z[k] = s;
        z[k + 1] = f64::INFINITY;
    }
    if !any {
        return false;
    }
    k = 0;
    for q in 0..n {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        arg[q] = v[k];
    }
    true
}
