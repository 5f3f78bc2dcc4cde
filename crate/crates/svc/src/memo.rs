use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use zfsolve::{lightsout_preprocess, GridSpec, LightsOutHandle};

type Slot = Arc<OnceLock<Result<Arc<LightsOutHandle>, String>>>;

/// Preprocessed handles keyed by board shape. Each shape is built once;
/// concurrent callers for the same shape wait on that build.
#[derive(Default)]
pub struct HandleCache {
    slots: Mutex<HashMap<(usize, usize), Slot>>,
    builds: AtomicUsize,
}

impl HandleCache {
    /// Blocks while the handle is built. Call from a blocking context.
    pub fn get(&self, grid: GridSpec) -> Result<Arc<LightsOutHandle>, String> {
        let slot = {
            let mut slots = self.slots.lock().unwrap_or_else(|e| e.into_inner());
            slots.entry((grid.rows(), grid.cols())).or_default().clone()
        };
        slot.get_or_init(|| {
            self.builds.fetch_add(1, Ordering::Relaxed);
            lightsout_preprocess(grid).map(Arc::new).map_err(|e| e.to_string())
        })
        .clone()
    }

    /// Number of handles built so far.
    pub fn builds(&self) -> usize {
        self.builds.load(Ordering::Relaxed)
    }
}
