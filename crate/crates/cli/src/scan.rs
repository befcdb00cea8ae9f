//! Parameter-space raster: fix the generator traces (x, y), sweep the
//! product trace z over a complex rectangle, and decide the trace-growth
//! conditions at every grid point.
//!
//! Rows are decided in parallel (one rayon task per row of constant Im z)
//! and merged by row index, so the output bytes never depend on thread
//! scheduling.  Columns within a row run serially.

use crate::CliError;
use farey_bq_core::analysis::{bq_decide, BqVerdict};
use farey_bq_core::geometry::representation_from_traces;
use num_complex::Complex64;
use rayon::prelude::*;

/// Upper bounds of a raster job: side length of the grid and search depth.
const MAX_SIDE: usize = 4096;
const MAX_DEPTH: u32 = 16;

/// A complex rectangle sampled on an inclusive endpoint grid: column c of
/// row r is z = re_min + c·Δre + i(im_min + r·Δim), with Δ spreading the
/// side over N − 1 steps (a single row or column sits at the minimum).
#[derive(Clone, Copy, Debug)]
pub struct ScanGrid {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub width: usize,
    pub height: usize,
}

impl ScanGrid {
    pub fn new(
        re_min: f64,
        re_max: f64,
        im_min: f64,
        im_max: f64,
        width: usize,
        height: usize,
    ) -> Result<Self, CliError> {
        if !(re_min.is_finite() && re_max.is_finite() && im_min.is_finite() && im_max.is_finite())
        {
            return Err(CliError::Usage("grid bounds must be finite".into()));
        }
        if re_min > re_max || im_min > im_max {
            return Err(CliError::Usage("grid ranges need MIN <= MAX".into()));
        }
        if width == 0 || height == 0 || width > MAX_SIDE || height > MAX_SIDE {
            return Err(CliError::Usage(format!(
                "grid resolution must be between 1x1 and {MAX_SIDE}x{MAX_SIDE}"
            )));
        }
        Ok(ScanGrid { re_min, re_max, im_min, im_max, width, height })
    }

    /// The grid point at (row, col).
    pub fn z_at(&self, row: usize, col: usize) -> Complex64 {
        let step = |min: f64, max: f64, idx: usize, n: usize| {
            if n > 1 {
                min + (max - min) * idx as f64 / (n - 1) as f64
            } else {
                min
            }
        };
        Complex64::new(
            step(self.re_min, self.re_max, col, self.width),
            step(self.im_min, self.im_max, row, self.height),
        )
    }

    /// The grid point nearest to `z` (useful for reading off one pixel).
    pub fn nearest(&self, z: Complex64) -> (usize, usize) {
        let snap = |min: f64, max: f64, v: f64, n: usize| {
            if n <= 1 || max <= min {
                return 0;
            }
            let idx = ((v - min) / (max - min) * (n - 1) as f64).round();
            (idx.max(0.0) as usize).min(n - 1)
        };
        (
            snap(self.im_min, self.im_max, z.im, self.height),
            snap(self.re_min, self.re_max, z.re, self.width),
        )
    }
}

/// A full raster job: the fixed generator traces plus grid and search
/// parameters.
#[derive(Clone, Copy, Debug)]
pub struct ScanJob {
    pub x: Complex64,
    pub y: Complex64,
    pub grid: ScanGrid,
    pub depth: u32,
    pub margin: f64,
}

/// Verdicts for every grid point, row-major.
#[derive(Clone, Debug)]
pub struct ScanResult {
    pub job: ScanJob,
    pub verdicts: Vec<BqVerdict>,
}

impl ScanResult {
    pub fn verdict_at(&self, row: usize, col: usize) -> &BqVerdict {
        &self.verdicts[row * self.job.grid.width + col]
    }

    /// CSV twin of the raster: one line per pixel, row-major.
    pub fn to_csv(&self) -> String {
        let grid = &self.job.grid;
        let mut out = String::from("row,col,z_re,z_im,verdict\n");
        for row in 0..grid.height {
            for col in 0..grid.width {
                let z = grid.z_at(row, col);
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    row,
                    col,
                    z.re,
                    z.im,
                    self.verdict_at(row, col).kind()
                ));
            }
        }
        out
    }

    /// Binary PGM (P5) raster: Yes = 255, Inconclusive = 128, No = 0.
    pub fn to_pgm(&self) -> Vec<u8> {
        let grid = &self.job.grid;
        let mut out = format!("P5\n{} {}\n255\n", grid.width, grid.height).into_bytes();
        out.extend(self.verdicts.iter().map(|v| match v {
            BqVerdict::Yes { .. } => 255u8,
            BqVerdict::Inconclusive { .. } => 128,
            BqVerdict::No { .. } => 0,
        }));
        out
    }
}

/// Decides every grid point of `job`.  `threads` caps the worker count
/// (None uses the rayon default); the pool is local to this call, so
/// concurrent scans never share state.
pub fn scan_slice(job: &ScanJob, threads: Option<usize>) -> Result<ScanResult, CliError> {
    if job.depth > MAX_DEPTH {
        return Err(CliError::Usage(format!("scan depth is capped at {MAX_DEPTH}")));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot build thread pool: {e}")))?;
    let grid = job.grid;
    let rows: Vec<Vec<BqVerdict>> = pool.install(|| {
        (0..grid.height)
            .into_par_iter()
            .map(|row| {
                (0..grid.width)
                    .map(|col| decide_pixel(job, grid.z_at(row, col)))
                    .collect()
            })
            .collect()
    });
    Ok(ScanResult { job: *job, verdicts: rows.into_iter().flatten().collect() })
}

/// One pixel: build the representation with product trace z and search.
/// Construction is total for any complex triple, so failures cannot occur;
/// reducible pixels are still searched (the trace recursion is defined on
/// every triple).
fn decide_pixel(job: &ScanJob, z: Complex64) -> BqVerdict {
    let rep = representation_from_traces(job.x, job.y, z)
        .expect("normal form exists for every trace triple");
    bq_decide(&rep, job.depth, job.margin)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(re: (f64, f64), im: (f64, f64), w: usize, h: usize, depth: u32) -> ScanJob {
        ScanJob {
            x: Complex64::new(3.0, 0.0),
            y: Complex64::new(3.0, 0.0),
            grid: ScanGrid::new(re.0, re.1, im.0, im.1, w, h).unwrap(),
            depth,
            margin: 0.0,
        }
    }

    #[test]
    fn single_pixel_grid_matches_direct_decision() {
        let job = job((3.0, 3.0), (0.0, 0.0), 1, 1, 10);
        let scan = scan_slice(&job, Some(1)).unwrap();
        assert_eq!(scan.verdicts.len(), 1);
        let rep = representation_from_traces(job.x, job.y, Complex64::new(3.0, 0.0)).unwrap();
        assert_eq!(scan.verdicts[0], bq_decide(&rep, 10, 0.0));
        assert!(scan.verdicts[0].is_yes());
    }

    #[test]
    fn real_interval_pixel_is_refused() {
        // z = 1: the product trace lies in [-2, 2], a non-loxodromic
        // primitive on the spot.
        let job = job((1.0, 1.0), (0.0, 0.0), 1, 1, 6);
        let scan = scan_slice(&job, Some(1)).unwrap();
        assert!(matches!(scan.verdicts[0], BqVerdict::No { .. }));
    }

    #[test]
    fn parallel_and_serial_scans_agree_byte_for_byte() {
        let job = job((2.5, 6.0), (-1.0, 1.0), 8, 8, 5);
        let serial = scan_slice(&job, Some(1)).unwrap();
        let parallel = scan_slice(&job, Some(4)).unwrap();
        assert_eq!(serial.to_csv(), parallel.to_csv());
        assert_eq!(serial.to_pgm(), parallel.to_pgm());
    }

    #[test]
    fn grid_points_share_endpoints_and_the_center_column() {
        let grid = ScanGrid::new(2.5, 6.0, -1.0, 1.0, 8, 8).unwrap();
        assert_eq!(grid.z_at(0, 0), Complex64::new(2.5, -1.0));
        assert_eq!(grid.z_at(7, 7), Complex64::new(6.0, 1.0));
        let (row, col) = grid.nearest(Complex64::new(3.0, 0.0));
        let z = grid.z_at(row, col);
        assert!((z.re - 3.0).abs() <= 0.25 && z.im.abs() <= 1.0 / 7.0);
    }

    #[test]
    fn pgm_raster_has_the_documented_header_and_levels() {
        let job = job((3.0, 3.0), (0.0, 0.0), 2, 1, 8);
        let scan = scan_slice(&job, Some(1)).unwrap();
        let pgm = scan.to_pgm();
        assert!(pgm.starts_with(b"P5\n2 1\n255\n"));
        assert_eq!(pgm.len(), b"P5\n2 1\n255\n".len() + 2);
        // Both pixels sit at z = 3 (width 2 over a degenerate interval).
        assert_eq!(&pgm[pgm.len() - 2..], &[255u8, 255]);
    }

    #[test]
    fn oversized_jobs_are_usage_errors() {
        assert!(ScanGrid::new(0.0, 1.0, 0.0, 1.0, 5000, 2).is_err());
        let job = job((3.0, 3.0), (0.0, 0.0), 1, 1, 17);
        assert!(matches!(scan_slice(&job, Some(1)), Err(CliError::Usage(_))));
    }
}
