use std::ops::{Add, AddAssign};

/// Instrumented memory traffic. All counters only ever grow during a solve.
///
/// `device_*` count element accesses to the large device memory ("global"
/// memory), `local_*` count accesses to tile-local staging storage. Transfer
/// counters are in bytes; `h2d_bytes` and `d2h_bytes` are totals, the other
/// transfer fields break them down by purpose.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MemoryCounters {
    pub device_reads: u64,
    pub device_writes: u64,
    pub local_reads: u64,
    pub local_writes: u64,
    pub h2d_bytes: u64,
    pub d2h_bytes: u64,
    pub kernel_launches: u64,
    /// Pivot-row broadcasts, one row per update.
    pub pivot_row_h2d_bytes: u64,
    /// Tableau partitions moved to the device.
    pub partition_h2d_bytes: u64,
    /// Tableau partitions moved back to the host.
    pub partition_d2h_bytes: u64,
    /// Constraint-matrix uploads for pricing.
    pub matrix_h2d_bytes: u64,
    pub updates: u64,
}

impl MemoryCounters {
    pub fn device_accesses(&self) -> u64 {
        self.device_reads + self.device_writes
    }

    pub fn local_accesses(&self) -> u64 {
        self.local_reads + self.local_writes
    }

    pub(crate) fn upload_partition(&mut self, bytes: u64) {
        self.partition_h2d_bytes += bytes;
        self.h2d_bytes += bytes;
    }

    pub(crate) fn download_partition(&mut self, bytes: u64) {
        self.partition_d2h_bytes += bytes;
        self.d2h_bytes += bytes;
    }

    pub(crate) fn upload_pivot_row(&mut self, bytes: u64) {
        self.pivot_row_h2d_bytes += bytes;
        self.h2d_bytes += bytes;
    }

    pub(crate) fn upload_matrix(&mut self, bytes: u64) {
        self.matrix_h2d_bytes += bytes;
        self.h2d_bytes += bytes;
    }

    /// Field-wise `self - earlier`.
    pub fn since(&self, earlier: &MemoryCounters) -> MemoryCounters {
        MemoryCounters {
            device_reads: self.device_reads - earlier.device_reads,
            device_writes: self.device_writes - earlier.device_writes,
            local_reads: self.local_reads - earlier.local_reads,
            local_writes: self.local_writes - earlier.local_writes,
            h2d_bytes: self.h2d_bytes - earlier.h2d_bytes,
            d2h_bytes: self.d2h_bytes - earlier.d2h_bytes,
            kernel_launches: self.kernel_launches - earlier.kernel_launches,
            pivot_row_h2d_bytes: self.pivot_row_h2d_bytes - earlier.pivot_row_h2d_bytes,
            partition_h2d_bytes: self.partition_h2d_bytes - earlier.partition_h2d_bytes,
            partition_d2h_bytes: self.partition_d2h_bytes - earlier.partition_d2h_bytes,
            matrix_h2d_bytes: self.matrix_h2d_bytes - earlier.matrix_h2d_bytes,
            updates: self.updates - earlier.updates,
        }
    }
}

impl AddAssign for MemoryCounters {
    fn add_assign(&mut self, o: MemoryCounters) {
        self.device_reads += o.device_reads;
        self.device_writes += o.device_writes;
        self.local_reads += o.local_reads;
        self.local_writes += o.local_writes;
        self.h2d_bytes += o.h2d_bytes;
        self.d2h_bytes += o.d2h_bytes;
        self.kernel_launches += o.kernel_launches;
        self.pivot_row_h2d_bytes += o.pivot_row_h2d_bytes;
        self.partition_h2d_bytes += o.partition_h2d_bytes;
        self.partition_d2h_bytes += o.partition_d2h_bytes;
        self.matrix_h2d_bytes += o.matrix_h2d_bytes;
        self.updates += o.updates;
    }
}

impl Add for MemoryCounters {
    type Output = MemoryCounters;

    fn add(mut self, o: MemoryCounters) -> MemoryCounters {
        self += o;
        self
    }
}
