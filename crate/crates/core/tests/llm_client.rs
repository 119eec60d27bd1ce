use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpListener;
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use c2j_core::llm_client::{
    complete, render_prompt, template_skeleton, BackendSpec, ClientError, PromptContext,
    PromptKind, FUNCTION_TEMPLATE, GLOBAL_TEMPLATE, RECORD_TEMPLATE,
};

fn prompt(kind: PromptKind, name: &str, payload: &str) -> c2j_core::llm_client::RenderedPrompt {
    render_prompt(kind, name, payload, &PromptContext::default()).unwrap()
}

#[test]
fn rendered_prompts_keep_template_text_verbatim() {
    let ctx = PromptContext {
        globals: vec!["@@G@@".into()],
        structs: vec!["@@S@@".into()],
    };
    let f = render_prompt(PromptKind::Function, "f", "@@F@@", &ctx).unwrap();
    let stripped = f
        .text
        .replace("@@F@@", "")
        .replace("@@G@@", "")
        .replace("@@S@@", "");
    assert_eq!(stripped, template_skeleton(PromptKind::Function));
    for kind in [PromptKind::Global, PromptKind::Record] {
        let p = render_prompt(kind, "x", "@@C@@", &PromptContext::default()).unwrap();
        assert_eq!(p.text.replace("@@C@@", ""), template_skeleton(kind));
    }
    assert!(FUNCTION_TEMPLATE.contains("{function_code}"));
    assert!(GLOBAL_TEMPLATE.trim_end().ends_with("{c_code}"));
    assert!(RECORD_TEMPLATE.contains("{c_code}"));
}

#[test]
fn empty_payload_is_rejected() {
    let err =
        render_prompt(PromptKind::Record, "s", "  \n", &PromptContext::default()).unwrap_err();
    assert!(matches!(err, ClientError::EmptyPayload(PromptKind::Record)));
}

#[test]
fn mock_replies_are_deterministic_and_scoped() {
    let mut replies = BTreeMap::new();
    replies.insert("add".to_string(), "bare".to_string());
    replies.insert("T3/add".to_string(), "scoped".to_string());
    let b = BackendSpec::mock("m", replies);
    let p = prompt(
        PromptKind::Function,
        "add",
        "int add(int a, int b) { return a + b; }",
    );
    assert_eq!(complete(&b, "T3", &p).unwrap().text, "scoped");
    assert_eq!(complete(&b, "T4", &p).unwrap().text, "bare");
    assert_eq!(complete(&b, "T4", &p).unwrap().text, "bare");
    let other = prompt(PromptKind::Function, "sub", "int sub(int a) { return -a; }");
    assert_eq!(complete(&b, "T3", &other).unwrap().text, "");
}

#[test]
fn rule_engine_is_not_promptable() {
    let p = prompt(PromptKind::Global, "g", "int g = 1;");
    assert!(matches!(
        complete(&BackendSpec::rule_engine(), "T1", &p),
        Err(ClientError::NotPromptable(_))
    ));
}

#[test]
fn refused_connection_is_infrastructure() {
    // Bind then drop to get a port with nothing listening.
    let port = TcpListener::bind("127.0.0.1:0")
        .unwrap()
        .local_addr()
        .unwrap()
        .port();
    let b = BackendSpec::remote("r", "mistral", &format!("http://127.0.0.1:{port}"));
    let err = complete(&b, "T1", &prompt(PromptKind::Global, "g", "int g;")).unwrap_err();
    assert!(matches!(err, ClientError::Connection { .. }), "{err:?}");
    assert!(err.is_infrastructure());
}

#[test]
fn silent_server_times_out() {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    let mut b = BackendSpec::remote("r", "mistral", &format!("http://{addr}"));
    b.gen_params.timeout_s = 0.3;
    let start = Instant::now();
    let err = complete(&b, "T1", &prompt(PromptKind::Global, "g", "int g;")).unwrap_err();
    assert!(matches!(err, ClientError::Timeout { .. }), "{err:?}");
    assert!(start.elapsed() < Duration::from_secs(5));
    drop(listener);
}

/// Answers one request with the given status and body, and hands back the
/// request body it received.
fn serve_once(status: &str, body: &str) -> (String, mpsc::Receiver<String>) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    let (tx, rx) = mpsc::channel();
    let status = status.to_string();
    let body = body.to_string();
    thread::spawn(move || {
        let (stream, _) = listener.accept().unwrap();
        let mut reader = BufReader::new(stream.try_clone().unwrap());
        let mut len = 0usize;
        loop {
            let mut line = String::new();
            reader.read_line(&mut line).unwrap();
            if line.trim().is_empty() {
                break;
            }
            if let Some(v) = line.to_ascii_lowercase().strip_prefix("content-length:") {
                len = v.trim().parse().unwrap();
            }
        }
        let mut req = vec![0; len];
        reader.read_exact(&mut req).unwrap();
        let _ = tx.send(String::from_utf8_lossy(&req).into_owned());
        let mut stream = stream;
        write!(
            stream,
            "HTTP/1.1 {status}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
            body.len()
        )
        .unwrap();
    });
    (format!("http://{addr}"), rx)
}

#[test]
fn successful_reply_and_request_shape() {
    let (url, rx) = serve_once(
        "200 OK",
        r#"{"model":"mistral","response":"public static int g = 1;","done":true}"#,
    );
    let b = BackendSpec::remote("r", "mistral", &url);
    let got = complete(&b, "T1", &prompt(PromptKind::Global, "g", "int g = 1;")).unwrap();
    assert_eq!(got.text, "public static int g = 1;");
    let req: serde_json::Value = serde_json::from_str(&rx.recv().unwrap()).unwrap();
    assert_eq!(req["model"], "mistral");
    assert_eq!(req["stream"], false);
    assert_eq!(req["options"]["temperature"], 0.0);
    assert_eq!(req["options"]["seed"], 42);
}

#[test]
fn unknown_model_is_reported_by_name() {
    let (url, _rx) = serve_once(
        "404 Not Found",
        r#"{"error":"model 'nosuch' not found, try pulling it first"}"#,
    );
    let b = BackendSpec::remote("r", "nosuch", &url);
    let err = complete(&b, "T1", &prompt(PromptKind::Global, "g", "int g;")).unwrap_err();
    assert!(
        matches!(&err, ClientError::UnknownModel(m) if m == "nosuch"),
        "{err:?}"
    );
}

#[test]
fn server_error_is_http_status() {
    let (url, _rx) = serve_once("500 Internal Server Error", r#"{"error":"boom"}"#);
    let b = BackendSpec::remote("r", "mistral", &url);
    let err = complete(&b, "T1", &prompt(PromptKind::Global, "g", "int g;")).unwrap_err();
    assert!(
        matches!(err, ClientError::HttpStatus { status: 500, .. }),
        "{err:?}"
    );
}

#[test]
fn garbage_body_is_malformed() {
    let (url, _rx) = serve_once("200 OK", "not json");
    let b = BackendSpec::remote("r", "mistral", &url);
    let err = complete(&b, "T1", &prompt(PromptKind::Global, "g", "int g;")).unwrap_err();
    assert!(matches!(err, ClientError::MalformedReply { .. }), "{err:?}");
}
