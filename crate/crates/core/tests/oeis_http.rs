use std::io::{BufRead, BufReader, Write};
use std::net::TcpListener;
use std::thread;
use std::time::Duration;

use diffops::opgraph::Family;
use diffops::sequences::{
    oeis_compare_with, FixtureSet, OeisClient, ReportSource, SequenceMode, SequenceRecord,
};

/// Serves a single HTTP response on an ephemeral port and returns the base URL
/// plus a handle yielding the request line.
fn serve_once(status: &'static str, body: String) -> (String, thread::JoinHandle<String>) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    let handle = thread::spawn(move || {
        let (stream, _) = listener.accept().unwrap();
        let mut reader = BufReader::new(stream.try_clone().unwrap());
        let mut request_line = String::new();
        reader.read_line(&mut request_line).unwrap();
        let mut line = String::new();
        while reader.read_line(&mut line).unwrap() > 2 {
            line.clear();
        }
        let mut stream = stream;
        write!(
            stream,
            "HTTP/1.1 {status}\r\nContent-Type: text/plain\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
            body.len()
        )
        .unwrap();
        request_line
    });
    (format!("http://{addr}"), handle)
}

fn powers_of_two_bfile(count: u32) -> String {
    let mut s = String::from("# powers of 2\n");
    for i in 0..count {
        s.push_str(&format!("{i} {}\n", num_bigint::BigInt::from(1) << i));
    }
    s
}

fn record_b3() -> SequenceRecord {
    SequenceRecord::build(Family::B, 3, 30).unwrap()
}

#[test]
fn online_fetch_parses_bfile() {
    let (url, server) = serve_once("200 OK", powers_of_two_bfile(100));
    let client = OeisClient {
        base_url: url,
        timeout: Duration::from_secs(5),
    };
    let report = oeis_compare_with(
        &record_b3(),
        SequenceMode::Online,
        &FixtureSet::bundled().unwrap(),
        &client,
    )
    .unwrap();
    assert_eq!(
        server.join().unwrap().trim(),
        "GET /A000079/b000079.txt HTTP/1.1"
    );
    assert_eq!(report.source, ReportSource::Online);
    assert!(report.passed);
    assert_eq!(report.offset, 2);
    assert_eq!(report.matched_terms, 30);
}

#[test]
fn http_error_falls_back_to_fixture() {
    let (url, server) = serve_once("404 Not Found", "no such file".into());
    let client = OeisClient::new(url);
    let report = oeis_compare_with(
        &record_b3(),
        SequenceMode::Online,
        &FixtureSet::bundled().unwrap(),
        &client,
    )
    .unwrap();
    server.join().unwrap();
    assert_eq!(report.source, ReportSource::OfflineFallback);
    assert!(report.fallback_reason.is_some());
    assert!(report.passed);
}

#[test]
fn unreachable_host_falls_back_to_fixture() {
    let client = OeisClient {
        base_url: "http://127.0.0.1:1".into(),
        timeout: Duration::from_secs(2),
    };
    let report = oeis_compare_with(
        &record_b3(),
        SequenceMode::Online,
        &FixtureSet::bundled().unwrap(),
        &client,
    )
    .unwrap();
    assert_eq!(report.source, ReportSource::OfflineFallback);
    assert!(report.passed);
}

#[test]
fn wrong_online_data_fails_comparison() {
    let body: String = (0..40).map(|i| format!("{i} {}\n", 3 * i + 1)).collect();
    let (url, server) = serve_once("200 OK", body);
    let report = oeis_compare_with(
        &record_b3(),
        SequenceMode::Online,
        &FixtureSet::bundled().unwrap(),
        &OeisClient::new(url),
    )
    .unwrap();
    server.join().unwrap();
    assert_eq!(report.source, ReportSource::Online);
    assert!(!report.passed);
}
