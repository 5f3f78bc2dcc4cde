//! Stateless HTTP front end for the lights-out solver.
//!
//! | method | path                                   | body / query              |
//! |--------|----------------------------------------|---------------------------|
//! | POST   | `/api/board/solve`                     | `{rows, cols, cells}`     |
//! | POST   | `/api/board/hint`                      | `{rows, cols, cells}`     |
//! | GET    | `/api/board/random?rows=&cols=&seed=`  |                           |
//! | GET    | `/healthz`                             |                           |
//!
//! Cells are arrays of 0/1 rows. Hint coordinates are 1-based.

mod api;
mod memo;

use std::net::SocketAddr;
use std::sync::Arc;

use axum::http::{HeaderValue, Method};
use axum::routing::{get, post};
use axum::Router;
use tower_http::cors::{AllowOrigin, CorsLayer};

pub use api::{BoardBody, HintPress, HintResponse, SolveResponse};
pub use memo::HandleCache;

/// Largest board accepted from the network, in cells.
pub const DEFAULT_MAX_CELLS: usize = 256 * 256;

#[derive(Clone, Debug)]
pub struct Config {
    pub max_cells: usize,
    /// Allowed CORS origin. `None` allows any origin.
    pub allow_origin: Option<String>,
}

impl Default for Config {
    fn default() -> Self {
        Config { max_cells: DEFAULT_MAX_CELLS, allow_origin: None }
    }
}

pub struct AppState {
    config: Config,
    handles: HandleCache,
}

impl AppState {
    pub fn new(config: Config) -> Arc<Self> {
        Arc::new(AppState { config, handles: HandleCache::default() })
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn handles(&self) -> &HandleCache {
        &self.handles
    }
}

fn cors(origin: Option<&str>) -> Result<CorsLayer, String> {
    let allow = match origin {
        None | Some("*") => AllowOrigin::any(),
        Some(o) => AllowOrigin::exact(HeaderValue::from_str(o).map_err(|e| format!("bad origin `{o}`: {e}"))?),
    };
    Ok(CorsLayer::new()
        .allow_origin(allow)
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([axum::http::header::CONTENT_TYPE]))
}

pub fn router(state: Arc<AppState>) -> Result<Router, String> {
    let cors = cors(state.config.allow_origin.as_deref())?;
    Ok(Router::new()
        .route("/api/board/solve", post(api::solve))
        .route("/api/board/hint", post(api::hint))
        .route("/api/board/random", get(api::random))
        .route("/healthz", get(|| async { "ok" }))
        .layer(cors)
        .with_state(state))
}

/// Binds `addr` and serves until the process is stopped.
pub fn serve_blocking(addr: SocketAddr, config: Config) -> std::io::Result<()> {
    let app = router(AppState::new(config)).map_err(std::io::Error::other)?;
    let runtime = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(addr).await?;
        eprintln!("listening on http://{}", listener.local_addr()?);
        axum::serve(listener, app).await
    })
}
