//! Dormand-Prince 5(4) pair with step-size control.

type P = (f64, f64);

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

pub const MIN_STEP: f64 = 1e-14;

fn stage<F: Fn(P) -> P>(f: &F, y: P, h: f64) -> (P, P) {
    let mut k = [(0.0, 0.0); 7];
    for i in 0..7 {
        let mut s = y;
        for j in 0..i {
            s.0 += h * A[i][j] * k[j].0;
            s.1 += h * A[i][j] * k[j].1;
        }
        k[i] = f(s);
    }
    let mut y5 = y;
    let mut err = (0.0, 0.0);
    for i in 0..7 {
        y5.0 += h * B5[i] * k[i].0;
        y5.1 += h * B5[i] * k[i].1;
        err.0 += h * (B5[i] - B4[i]) * k[i].0;
        err.1 += h * (B5[i] - B4[i]) * k[i].1;
    }
    (y5, err)
}

/// Try steps starting at `h` until one is accepted. Returns the new point,
/// the step used and a proposal for the next step; `None` on underflow.
pub fn adaptive_step<F: Fn(P) -> P>(f: &F, y: P, mut h: f64, rtol: f64, atol: f64) -> Option<(P, f64, f64)> {
    loop {
        if h < MIN_STEP {
            return None;
        }
        let (y5, e) = stage(f, y, h);
        let sc0 = atol + rtol * y.0.abs().max(y5.0.abs());
        let sc1 = atol + rtol * y.1.abs().max(y5.1.abs());
        let err = (e.0 / sc0).abs().max((e.1 / sc1).abs());
        if err.is_finite() && err <= 1.0 && y5.0.is_finite() && y5.1.is_finite() {
            let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            return Some((y5, h, h * fac));
        }
        let fac = if err.is_finite() { (0.9 * err.powf(-0.2)).clamp(0.1, 0.5) } else { 0.1 };
        h *= fac;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_stays_on_circle() {
        let f = |p: P| (-p.1, p.0);
        let mut y = (1.0, 0.0);
        let mut h: f64 = 0.1;
        let mut t = 0.0;
        while t < std::f64::consts::TAU {
            let step = h.min(std::f64::consts::TAU - t);
            let (ny, used, nh) = adaptive_step(&f, y, step, 1e-10, 1e-12).unwrap();
            y = ny;
            t += used;
            h = nh;
        }
        assert!((y.0 - 1.0).abs() < 1e-8 && y.1.abs() < 1e-8, "{y:?}");
    }
}
