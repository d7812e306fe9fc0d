use super::{KernelMode, MemoryCounters};

/// Mutable view of one tile inside a row-major buffer.
pub struct TileView<'a> {
    /// Buffer starting at the tile's first element.
    pub data: &'a mut [f64],
    pub stride: usize,
    pub rows: usize,
    pub cols: usize,
}

impl<'a> TileView<'a> {
    pub fn new(data: &'a mut [f64], stride: usize, rows: usize, cols: usize) -> Self {
        debug_assert!(rows == 0 || data.len() >= (rows - 1) * stride + cols);
        TileView {
            data,
            stride,
            rows,
            cols,
        }
    }
}

/// Rank-one tile update `A[i,j] += (−y_i)·x_j`.
///
/// `x` is the pivot-row segment for the tile's columns and `y` the multiplier
/// segment for its rows. In cached mode both segments are staged into local
/// storage first (one device read per distinct element) and an element is
/// only read and written back when its product is nonzero. Naive mode reads
/// `A`, `x` and `y` from device memory for every element and always writes.
pub fn tile_kernel(
    tile: TileView<'_>,
    x: &[f64],
    y: &[f64],
    mode: KernelMode,
    counters: &mut MemoryCounters,
) {
    assert_eq!(x.len(), tile.cols);
    assert_eq!(y.len(), tile.rows);
    let (h, w) = (tile.rows, tile.cols);
    let cells = (h * w) as u64;
    match mode {
        KernelMode::Cached => {
            let xs: Vec<f64> = x.to_vec();
            let ys: Vec<f64> = y.to_vec();
            counters.device_reads += (h + w) as u64;
            counters.local_writes += (h + w) as u64;
            counters.local_reads += 2 * cells;
            let mut written = 0u64;
            for (i, &yi) in ys.iter().enumerate() {
                let row = &mut tile.data[i * tile.stride..i * tile.stride + w];
                let neg = -yi;
                for (a, &xj) in row.iter_mut().zip(&xs) {
                    let temp = neg * xj;
                    if temp != 0.0 {
                        *a += temp;
                        written += 1;
                    }
                }
            }
            counters.device_reads += written;
            counters.device_writes += written;
        }
        KernelMode::Naive => {
            counters.device_reads += 3 * cells;
            counters.device_writes += cells;
            for (i, &yi) in y.iter().enumerate() {
                let row = &mut tile.data[i * tile.stride..i * tile.stride + w];
                for (a, &xj) in row.iter_mut().zip(x) {
                    *a += (-yi) * xj;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full_tile(mode: KernelMode, y: f64) -> (Vec<f64>, MemoryCounters) {
        let mut a: Vec<f64> = (0..256).map(|v| v as f64).collect();
        let x: Vec<f64> = (1..=16).map(|v| v as f64).collect();
        let ys = vec![y; 16];
        let mut c = MemoryCounters::default();
        tile_kernel(TileView::new(&mut a, 16, 16, 16), &x, &ys, mode, &mut c);
        (a, c)
    }

    #[test]
    fn cached_full_tile_costs_32_plus_2x256() {
        let (_, c) = full_tile(KernelMode::Cached, 0.5);
        assert_eq!(c.device_accesses(), 32 + 2 * 256);
        assert_eq!(c.local_writes, 32);
        assert_eq!(c.local_reads, 512);
    }

    #[test]
    fn naive_full_tile_costs_4x256() {
        let (_, c) = full_tile(KernelMode::Naive, 0.5);
        assert_eq!(c.device_accesses(), 4 * 256);
        assert_eq!(c.local_accesses(), 0);
    }

    #[test]
    fn zero_multipliers_write_nothing() {
        let (a, c) = full_tile(KernelMode::Cached, 0.0);
        assert_eq!(c.device_writes, 0);
        assert_eq!(c.device_reads, 32);
        assert_eq!(a, (0..256).map(|v| v as f64).collect::<Vec<_>>());
    }

    #[test]
    fn modes_agree_on_values() {
        let (a, _) = full_tile(KernelMode::Cached, 0.75);
        let (b, _) = full_tile(KernelMode::Naive, 0.75);
        assert_eq!(a, b);
    }

    #[test]
    fn partial_tile_counts_scale() {
        let mut a = vec![1.0; 3 * 8];
        let mut c = MemoryCounters::default();
        tile_kernel(TileView::new(&mut a, 8, 3, 5), &[1.0; 5], &[2.0; 3], KernelMode::Cached, &mut c);
        assert_eq!(c.device_accesses(), 8 + 2 * 15);
        assert_eq!(&a[..8], &[-1.0, -1.0, -1.0, -1.0, -1.0, 1.0, 1.0, 1.0]);
    }
}
