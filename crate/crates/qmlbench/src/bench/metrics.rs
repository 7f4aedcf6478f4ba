//! Process-level measurement: CPU clock and peak resident memory.
//!
//! CPU time is the process CPU clock (all threads), not wall time. Peak
//! memory comes from /proc/self/status VmHWM where the platform provides
//! it; rows fall back to the theoretical statevector footprint otherwise.

use serde::{Deserialize, Serialize};

/// Seconds of CPU time consumed by this process so far.
#[cfg(unix)]
pub fn cpu_seconds() -> f64 {
    let mut ts = libc::timespec { tv_sec: 0, tv_nsec: 0 };
    let rc = unsafe { libc::clock_gettime(libc::CLOCK_PROCESS_CPUTIME_ID, &mut ts) };
    if rc == 0 {
        ts.tv_sec as f64 + ts.tv_nsec as f64 * 1e-9
    } else {
        // clock unavailable: degrade to wall time
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs_f64())
            .unwrap_or(0.0)
    }
}

#[cfg(not(unix))]
pub fn cpu_seconds() -> f64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs_f64())
        .unwrap_or(0.0)
}

/// Peak resident set size in bytes, if the platform exposes it.
pub fn peak_memory_bytes() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    for line in status.lines() {
        if let Some(rest) = line.strip_prefix("VmHWM:") {
            let kb: u64 = rest.trim().trim_end_matches("kB").trim().parse().ok()?;
            return Some(kb * 1024);
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MemoryKind {
    /// Process high-water mark read from the platform.
    Measured,
    /// 16·2^n statevector bytes; used when no measurement is available.
    Theoretical,
    /// Classical model on a platform without peak-RSS reporting.
    Unavailable,
}

/// Statevector footprint in bytes for an n-qubit register.
pub fn theoretical_statevector_bytes(n_qubits: usize) -> u64 {
    16u64 << n_qubits.min(40)
}
