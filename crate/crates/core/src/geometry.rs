//! Box trajectories for cut-and-paste operators.

use crate::error::{Error, Result};

/// A constant-size box with a per-frame center, defined over an inclusive
/// temporal extent. Centers between the extent endpoints are the exact
/// linear interpolation `c_a + u * (c_b - c_a)`; outside the extent they
/// are pinned to the nearest endpoint (those frames are never rasterized).
///
/// Invariant: for every frame of the extent the box lies fully inside the
/// W x H frame, `cx - w/2 >= 0`, `cx + w/2 <= W` (same for y), enforced at
/// construction from the valid-center rectangle.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxTrajectory {
    pub box_w: usize,
    pub box_h: usize,
    centers: Vec<(f64, f64)>,
    pub extent: (usize, usize),
    frame_w: usize,
    frame_h: usize,
}

impl BoxTrajectory {
    /// Interpolate a trajectory from centers at the extent endpoints.
    #[allow(clippy::too_many_arguments)]
    pub fn interpolate(
        start: (f64, f64),
        end: (f64, f64),
        box_w: usize,
        box_h: usize,
        frame_w: usize,
        frame_h: usize,
        n: usize,
        extent: (usize, usize),
    ) -> Result<Self> {
        let (t_a, t_b) = extent;
        if box_w > frame_w || box_h > frame_h {
            return Err(Error::BoxTooLarge { bw: box_w, bh: box_h, w: frame_w, h: frame_h });
        }
        if box_w == 0 || box_h == 0 {
            return Err(Error::DegenerateRegion("zero-size box".into()));
        }
        if t_a > t_b || t_b >= n {
            return Err(Error::FrameOutOfRange { t: t_b, n });
        }
        for &(cx, cy) in &[start, end] {
            let hw = box_w as f64 / 2.0;
            let hh = box_h as f64 / 2.0;
            if cx - hw < -1e-9
                || cx + hw > frame_w as f64 + 1e-9
                || cy - hh < -1e-9
                || cy + hh > frame_h as f64 + 1e-9
            {
                return Err(Error::DegenerateRegion(format!(
                    "center ({cx}, {cy}) puts {box_w}x{box_h} box outside {frame_w}x{frame_h} frame"
                )));
            }
        }
        let mut centers = Vec::with_capacity(n);
        let span = (t_b - t_a) as f64;
        for t in 0..n {
            let c = if t <= t_a {
                start
            } else if t >= t_b {
                end
            } else {
                let u = (t - t_a) as f64 / span;
                (start.0 + u * (end.0 - start.0), start.1 + u * (end.1 - start.1))
            };
            centers.push(c);
        }
        Ok(BoxTrajectory { box_w, box_h, centers, extent, frame_w, frame_h })
    }

    pub fn center(&self, t: usize) -> (f64, f64) {
        self.centers[t]
    }

    pub fn centers(&self) -> &[(f64, f64)] {
        &self.centers
    }

    /// Rasterize the box at frame t: integer top-left such that the box is
    /// exactly `box_w x box_h` pixels and fully inside the frame.
    pub fn rect(&self, t: usize) -> (usize, usize) {
        let (cx, cy) = self.centers[t];
        let x0 = round_clamped(cx - self.box_w as f64 / 2.0, self.frame_w - self.box_w);
        let y0 = round_clamped(cy - self.box_h as f64 / 2.0, self.frame_h - self.box_h);
        (x0, y0)
    }

    /// True when `t` lies inside the temporal extent.
    pub fn covers(&self, t: usize) -> bool {
        t >= self.extent.0 && t <= self.extent.1
    }
}

fn round_clamped(v: f64, max: usize) -> usize {
    let r = (v + 0.5).floor();
    if r <= 0.0 {
        0
    } else {
        (r as usize).min(max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn static_trajectory_has_identical_centers() {
        let tr = BoxTrajectory::interpolate((20.0, 30.0), (20.0, 30.0), 10, 10, 64, 64, 5, (0, 4)).unwrap();
        for t in 0..5 {
            assert_eq!(tr.center(t), (20.0, 30.0));
            assert_eq!(tr.rect(t), (15, 25));
        }
    }

    #[test]
    fn linear_interpolation_oracle() {
        // n=5, start (10,10), end (30,50): x = [10,15,20,25,30], y = [10,20,30,40,50]
        let tr = BoxTrajectory::interpolate((10.0, 10.0), (30.0, 50.0), 8, 8, 64, 64, 5, (0, 4)).unwrap();
        let xs: Vec<f64> = (0..5).map(|t| tr.center(t).0).collect();
        let ys: Vec<f64> = (0..5).map(|t| tr.center(t).1).collect();
        assert_eq!(xs, vec![10.0, 15.0, 20.0, 25.0, 30.0]);
        assert_eq!(ys, vec![10.0, 20.0, 30.0, 40.0, 50.0]);
    }

    #[test]
    fn pinned_endpoints_interpolate_exactly() {
        // When start == end, interpolation must reproduce the value bit-exactly
        // at every frame (the float-vs-static degeneracy hinges on this).
        let c = (13.370000000000001, 41.99999999999997);
        let tr = BoxTrajectory::interpolate(c, c, 4, 4, 64, 64, 9, (0, 8)).unwrap();
        for t in 0..9 {
            assert_eq!(tr.center(t), c);
        }
    }

    #[test]
    fn rect_never_leaves_frame() {
        let tr = BoxTrajectory::interpolate((5.0, 5.0), (59.0, 59.0), 10, 10, 64, 64, 7, (0, 6)).unwrap();
        for t in 0..7 {
            let (x0, y0) = tr.rect(t);
            assert!(x0 + tr.box_w <= 64);
            assert!(y0 + tr.box_h <= 64);
        }
    }

    #[test]
    fn oversized_box_is_rejected() {
        assert!(BoxTrajectory::interpolate((32.0, 32.0), (32.0, 32.0), 65, 10, 64, 64, 4, (0, 3)).is_err());
    }
}
