use std::ops::Range;
use std::sync::Arc;

use rayon::prelude::*;
use rayon::ThreadPool;

use super::kernel::{tile_kernel, TileView};
use super::{plan, Case, EngineError, KernelMode, MemoryBudget, MemoryCounters, TilePlan};

/// Owner of the tableau storage: a host buffer plus a device arena holding
/// the resident partition.
///
/// Rows of the resident partition are only valid in the arena; their host
/// copy is stale until the partition is transferred back. [`row`](Self::row)
/// always returns the current copy.
#[derive(Clone)]
pub struct TiledEngine {
    rows: usize,
    width: usize,
    plan: TilePlan,
    kernel: KernelMode,
    element_bytes: u64,
    host: Vec<f64>,
    device: Vec<f64>,
    resident: Option<usize>,
    counters: MemoryCounters,
    pool: Option<Arc<ThreadPool>>,
}

impl std::fmt::Debug for TiledEngine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TiledEngine")
            .field("rows", &self.rows)
            .field("width", &self.width)
            .field("plan", &self.plan)
            .field("kernel", &self.kernel)
            .field("resident", &self.resident)
            .field("counters", &self.counters)
            .finish()
    }
}

impl TiledEngine {
    pub fn new(
        rows: usize,
        width: usize,
        budget: MemoryBudget,
        kernel: KernelMode,
    ) -> Result<Self, EngineError> {
        let p = plan(rows, width, budget)?;
        Ok(Self::with_plan(p, rows, kernel, budget.element_bytes))
    }

    pub fn with_plan(plan: TilePlan, rows: usize, kernel: KernelMode, element_bytes: u64) -> Self {
        let width = plan.row_width;
        TiledEngine {
            rows,
            width,
            kernel,
            element_bytes,
            host: vec![0.0; rows * width],
            device: Vec::with_capacity(plan.largest_partition_rows() * width),
            resident: None,
            counters: MemoryCounters::default(),
            pool: None,
            plan,
        }
    }

    /// Runs tile bands on `pool` instead of the calling thread.
    pub fn with_pool(mut self, pool: Option<Arc<ThreadPool>>) -> Self {
        self.pool = pool;
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn plan(&self) -> &TilePlan {
        &self.plan
    }

    pub fn kernel(&self) -> KernelMode {
        self.kernel
    }

    pub fn counters(&self) -> &MemoryCounters {
        &self.counters
    }

    pub fn pool(&self) -> Option<&Arc<ThreadPool>> {
        self.pool.as_ref()
    }

    pub fn resident_partition(&self) -> Option<usize> {
        self.resident
    }

    fn row_bytes(&self) -> u64 {
        self.width as u64 * self.element_bytes
    }

    /// Installs the initial tableau and performs the start-of-solve upload:
    /// everything in the in-core case, the last partition otherwise.
    pub fn load(&mut self, data: Vec<f64>) {
        assert_eq!(data.len(), self.rows * self.width);
        self.host = data;
        self.resident = None;
        let first = self.plan.resident_partition;
        self.upload(first);
    }

    fn upload(&mut self, p: usize) {
        let range = self.plan.partitions[p].clone();
        let span = range.start * self.width..range.end * self.width;
        self.device.clear();
        self.device.extend_from_slice(&self.host[span]);
        self.counters.upload_partition(range.len() as u64 * self.row_bytes());
        self.resident = Some(p);
    }

    fn download(&mut self) {
        if let Some(p) = self.resident.take() {
            let range = self.plan.partitions[p].clone();
            let span = range.start * self.width..range.end * self.width;
            self.host[span].copy_from_slice(&self.device);
            self.counters.download_partition(range.len() as u64 * self.row_bytes());
        }
    }

    fn resident_range(&self) -> Option<Range<usize>> {
        self.resident.map(|p| self.plan.partitions[p].clone())
    }

    pub fn row(&self, i: usize) -> &[f64] {
        match self.resident_range() {
            Some(r) if r.contains(&i) => {
                let o = (i - r.start) * self.width;
                &self.device[o..o + self.width]
            }
            _ => &self.host[i * self.width..(i + 1) * self.width],
        }
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        let w = self.width;
        match self.resident_range() {
            Some(r) if r.contains(&i) => {
                let o = (i - r.start) * w;
                &mut self.device[o..o + w]
            }
            _ => &mut self.host[i * w..(i + 1) * w],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.row(i)[j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.row_mut(i)[j] = v;
    }

    /// Current contents of the whole tableau, row-major. Not counted.
    pub fn snapshot(&self) -> Vec<f64> {
        let mut out = self.host.clone();
        if let Some(r) = self.resident_range() {
            out[r.start * self.width..r.end * self.width].copy_from_slice(&self.device);
        }
        out
    }

    /// End-of-solve transfer of the resident partition back to the host.
    pub fn finish(&mut self) {
        self.download();
    }

    /// Constraint matrix upload at solve start; it stays on the device only
    /// in the in-core case.
    pub fn stage_matrix(&mut self, bytes: u64) {
        if self.plan.case == Case::InCore {
            self.counters.upload_matrix(bytes);
        }
    }

    /// A pricing pass over the constraint matrix; streamed in the tiled case.
    pub fn pricing_pass(&mut self, bytes: u64) {
        if self.plan.case == Case::Tiled {
            self.counters.upload_matrix(bytes);
        }
    }

    /// Applies `row_i += (−multipliers[i])·pivot` to every row, where
    /// `pivot` is row `pivot_row` as it stands on entry (already divided by
    /// the pivot element).
    ///
    /// The pivot row is broadcast once. Partitions are visited resident
    /// first, then in ascending order; each non-resident partition is
    /// uploaded, and every partition but the last one visited is transferred
    /// back. The last one stays resident for the next update.
    pub fn pivot_update(&mut self, pivot_row: usize, multipliers: &[f64]) {
        assert_eq!(multipliers.len(), self.rows);
        let pivot: Vec<f64> = self.row(pivot_row).to_vec();
        let bytes = self.row_bytes();
        self.counters.upload_pivot_row(bytes);
        self.counters.updates += 1;

        let n = self.plan.num_partitions();
        let mut order: Vec<usize> = Vec::with_capacity(n);
        order.extend(self.resident);
        order.extend((0..n).filter(|&p| Some(p) != self.resident));

        for (pos, &p) in order.iter().enumerate() {
            if self.resident != Some(p) {
                self.download();
                self.upload(p);
            }
            let range = self.plan.partitions[p].clone();
            let delta = self.run_partition(&pivot, &multipliers[range]);
            self.counters += delta;
            self.counters.kernel_launches += 1;
            if pos + 1 < order.len() {
                self.download();
            }
        }
    }

    fn run_partition(&mut self, pivot: &[f64], mult: &[f64]) -> MemoryCounters {
        let width = self.width;
        let (tr, tc) = (self.plan.tile_rows, self.plan.tile_cols);
        let mode = self.kernel;
        let band = move |(b, chunk): (usize, &mut [f64])| {
            let band_rows = chunk.len() / width;
            let ys = &mult[b * tr..b * tr + band_rows];
            let mut c = MemoryCounters::default();
            for c0 in (0..width).step_by(tc) {
                let w = tc.min(width - c0);
                let tile = TileView::new(&mut chunk[c0..], width, band_rows, w);
                tile_kernel(tile, &pivot[c0..c0 + w], ys, mode, &mut c);
            }
            c
        };
        let data = &mut self.device[..];
        match &self.pool {
            Some(pool) => pool.install(|| {
                data.par_chunks_mut(tr * width)
                    .enumerate()
                    .map(band)
                    .reduce(MemoryCounters::default, |a, b| a + b)
            }),
            None => data
                .chunks_mut(tr * width)
                .enumerate()
                .map(band)
                .fold(MemoryCounters::default(), |a, b| a + b),
        }
    }
}
