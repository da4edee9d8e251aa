//! WebSocket steering service. One [`SessionHandler`] per connection; frames
//! of a connection are handled in arrival order.

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::ws::{Message, WebSocket, WebSocketUpgrade};
use axum::extract::State;
use axum::response::Response;
use axum::routing::get;
use axum::Router;
use qaffect::session::{ServerMessage, SessionConfig, SessionHandler, TrajectorySample};
use tokio::net::TcpListener;
use tower_http::services::ServeDir;

#[derive(Debug, Clone, Default)]
pub struct ServeOptions {
    pub config: SessionConfig,
    /// Predicted path that finished sessions are scored against.
    pub model: Option<Vec<TrajectorySample>>,
    /// Directory of browser assets served at `/`.
    pub static_dir: Option<PathBuf>,
}

pub fn router(opts: ServeOptions) -> Router {
    let static_dir = opts.static_dir.clone();
    let app = Router::new()
        .route("/ws", get(upgrade))
        .route("/health", get(|| async { "ok" }))
        .with_state(Arc::new(opts));
    match static_dir {
        Some(dir) => app.fallback_service(ServeDir::new(dir)),
        None => app,
    }
}

/// Serves until the listener fails or the task is cancelled.
pub async fn serve(listener: TcpListener, opts: ServeOptions) -> std::io::Result<()> {
    axum::serve(listener, router(opts)).await
}

/// Binds `addr` and returns the bound address with the running server future.
pub async fn bind(
    addr: SocketAddr,
    opts: ServeOptions,
) -> std::io::Result<(
    SocketAddr,
    impl std::future::Future<Output = std::io::Result<()>>,
)> {
    let listener = TcpListener::bind(addr).await?;
    let local = listener.local_addr()?;
    Ok((local, serve(listener, opts)))
}

async fn upgrade(ws: WebSocketUpgrade, State(opts): State<Arc<ServeOptions>>) -> Response {
    ws.on_upgrade(move |socket| run_session(socket, opts))
}

async fn run_session(mut socket: WebSocket, opts: Arc<ServeOptions>) {
    let mut handler = match SessionHandler::new(opts.config, opts.model.clone()) {
        Ok(h) => h,
        Err(e) => {
            let _ = send(
                &mut socket,
                &ServerMessage::Error {
                    message: e.to_string(),
                },
            )
            .await;
            return;
        }
    };
    while let Some(Ok(frame)) = socket.recv().await {
        let replies = match frame {
            Message::Text(text) => handler.handle_text(text.as_str()),
            Message::Binary(_) => vec![ServerMessage::Error {
                message: "expected a JSON text frame".into(),
            }],
            Message::Close(_) => break,
            Message::Ping(_) | Message::Pong(_) => continue,
        };
        for msg in &replies {
            if send(&mut socket, msg).await.is_err() {
                return;
            }
        }
    }
}

async fn send(socket: &mut WebSocket, msg: &ServerMessage) -> Result<(), axum::Error> {
    let text = serde_json::to_string(msg).expect("server messages serialize");
    socket.send(Message::Text(text.into())).await
}
