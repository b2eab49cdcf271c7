//! Minimal local chat-completions endpoint for exercising the LLM client.

#![allow(dead_code)]

use std::io::{BufRead, BufReader, Read, Write};
use std::net::{TcpListener, TcpStream};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Arc;
use std::thread::{self, JoinHandle};
use std::time::Duration;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Behavior {
    /// Returns the query capitalized with a final period.
    Echo,
    /// Echoes every other request and rewrites the rest.
    RewriteHalf,
    /// Answers in another language.
    Translate,
    /// Responds with HTTP 500.
    Fail,
}

pub struct StubServer {
    pub url: String,
    pub requests: Arc<AtomicUsize>,
    stop: Arc<AtomicBool>,
    addr: std::net::SocketAddr,
    handle: Option<JoinHandle<()>>,
}

impl StubServer {
    pub fn start(behavior: Behavior, delay: Duration) -> Self {
        let listener = TcpListener::bind("127.0.0.1:0").expect("bind stub");
        let addr = listener.local_addr().unwrap();
        let stop = Arc::new(AtomicBool::new(false));
        let requests = Arc::new(AtomicUsize::new(0));
        let (stop2, requests2) = (stop.clone(), requests.clone());
        let handle = thread::spawn(move || {
            for stream in listener.incoming() {
                if stop2.load(Ordering::SeqCst) {
                    break;
                }
                let Ok(stream) = stream else { continue };
                let n = requests2.fetch_add(1, Ordering::SeqCst);
                thread::spawn(move || handle(stream, behavior, delay, n));
            }
        });
        StubServer {
            url: format!("http://{addr}/v1/chat/completions"),
            requests,
            stop,
            addr,
            handle: Some(handle),
        }
    }
}

impl Drop for StubServer {
    fn drop(&mut self) {
        self.stop.store(true, Ordering::SeqCst);
        let _ = TcpStream::connect(self.addr);
        if let Some(h) = self.handle.take() {
            let _ = h.join();
        }
    }
}

fn handle(stream: TcpStream, behavior: Behavior, delay: Duration, n: usize) {
    let mut reader = BufReader::new(stream.try_clone().unwrap());
    let mut content_length = 0usize;
    let mut authorized = false;
    let mut line = String::new();
    loop {
        line.clear();
        if reader.read_line(&mut line).unwrap_or(0) == 0 {
            return;
        }
        let trimmed = line.trim_end();
        if trimmed.is_empty() {
            break;
        }
        let lower = trimmed.to_ascii_lowercase();
        if let Some(v) = lower.strip_prefix("content-length:") {
            content_length = v.trim().parse().unwrap_or(0);
        }
        if lower.starts_with("authorization: bearer ") {
            authorized = true;
        }
    }
    let mut body = vec![0u8; content_length];
    if reader.read_exact(&mut body).is_err() {
        return;
    }
    thread::sleep(delay);

    let (status, payload) = if !authorized {
        ("401 Unauthorized", r#"{"error":"missing key"}"#.to_string())
    } else if behavior == Behavior::Fail {
        (
            "500 Internal Server Error",
            r#"{"error":"boom"}"#.to_string(),
        )
    } else {
        let request: serde_json::Value = serde_json::from_slice(&body).unwrap();
        let prompt = request["messages"][0]["content"].as_str().unwrap_or("");
        let query = prompt
            .lines()
            .rev()
            .find_map(|l| l.strip_prefix("### Input:"))
            .unwrap_or("")
            .trim();
        let answer = match behavior {
            Behavior::Echo => echo(query),
            Behavior::RewriteHalf if n.is_multiple_of(2) => echo(query),
            Behavior::RewriteHalf => format!("Bueno, {}", echo(query)),
            Behavior::Translate => "Hello, how are you?".to_string(),
            Behavior::Fail => unreachable!(),
        };
        let resp = serde_json::json!({
            "choices": [{"message": {"role": "assistant", "content": answer}}]
        });
        ("200 OK", resp.to_string())
    };
    let mut stream = stream;
    let _ = write!(
        stream,
        "HTTP/1.1 {status}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{payload}",
        payload.len()
    );
    let _ = stream.flush();
}

fn echo(query: &str) -> String {
    let mut chars = query.chars();
    match chars.next() {
        Some(c) => format!("{}{}.", c.to_uppercase(), chars.as_str()),
        None => String::new(),
    }
}
