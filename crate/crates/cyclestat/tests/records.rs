//! JSON round trips and cache keys, through the library API.

use clap::Parser;
use cyclestat::cache::Cache;
use cyclestat::{commands, Cli, Payload, ResultRecord, RunConfig};

fn config(args: &[&str]) -> RunConfig {
    let mut argv = vec!["cyclestat"];
    argv.extend_from_slice(args);
    Cli::try_parse_from(argv).expect("valid arguments").run_config()
}

fn run(args: &[&str]) -> ResultRecord {
    commands::run(&config(args), None).expect("command succeeds")
}

const EVERY_KIND: &[&[&str]] = &[
    &["stats", "--which", "E", "-n", "12", "-r", "3"],
    &["stats", "--which", "W", "-n", "9", "--float"],
    &["constants", "-r", "3"],
    &["constants", "-r", "2", "--cr-only"],
    &["series", "-r", "4", "-N", "15"],
    &["series", "-r", "2", "-N", "15", "--float"],
    &["scan", "--q", "5", "-n", "2", "-r", "3", "--alpha", "d_3"],
    &["sweep", "--primes", "3,5", "-n", "3", "--alpha", "phi"],
    &["census", "--q", "3", "-n", "3", "-r", "2", "--shifts", "0;1,1"],
    &["probe", "-n", "7", "--q", "2"],
    &["certify", "-n", "8"],
    &["trend", "--n-list", "10,100", "--target", "W"],
    &["factor", "--q", "2", "--poly", "0,1,1,1,0,1", "--seed", "5"],
];

#[test]
fn records_round_trip_bit_for_bit() {
    for args in EVERY_KIND {
        let rec = run(args);
        let text = serde_json::to_string(&rec).unwrap();
        let back: ResultRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rec, "{args:?}");
        assert_eq!(serde_json::to_string(&back).unwrap(), text, "{args:?}");
    }
}

#[test]
fn rationals_are_num_den_strings() {
    let rec = run(&["stats", "--which", "E", "-n", "4"]);
    let v = serde_json::to_value(&rec).unwrap();
    assert_eq!(v["payload"]["kind"], "stats");
    assert_eq!(v["payload"]["value"], "97/288");
    assert_eq!(v["provenance"], "exact");
    assert_eq!(v["tool"], "cyclestat");
    assert_eq!(v["config"]["command"]["name"], "stats");
    assert!(chrono_like(v["timestamp"].as_str().unwrap()));
}

fn chrono_like(ts: &str) -> bool {
    ts.len() >= 20 && ts.as_bytes()[4] == b'-' && ts.contains('T')
}

/// A realized totient collision must be a root of the structure difference,
/// so it shows up among the certificate's pairs for that `q`. The converse
/// fails: over F_2 the pair `[6,1]`, `[3,2,2]` needs two distinct
/// irreducible quadratics and there is only one.
#[test]
fn probe_collisions_are_certificate_pairs() {
    for (n, q) in [(7usize, 2u64), (8, 2), (6, 3), (5, 5)] {
        let Payload::Probe(p) = run(&["probe", "-n", &n.to_string(), "--q", &q.to_string()]).payload else {
            panic!()
        };
        let Payload::Certify(c) = run(&["certify", "-n", &n.to_string()]).payload else { panic!() };
        assert_eq!(p.certificate_threshold, c.q_threshold);
        for hit in &p.collisions {
            let found = c.colliding_pairs.iter().any(|pair| {
                pair.q == q
                    && ((pair.left == hit.left && pair.right == hit.right)
                        || (pair.left == hit.right && pair.right == hit.left))
            });
            assert!(found, "n={n} q={q} {hit:?}");
        }
    }
    let Payload::Probe(p) = run(&["probe", "-n", "7", "--q", "2"]).payload else { panic!() };
    assert!(p.collisions.is_empty());
}

#[test]
fn cache_key_ignores_presentation() {
    let a = config(&["scan", "--q", "3", "-n", "2"]);
    let b = config(&["scan", "--q", "3", "-n", "2", "--format", "csv", "-o", "x.csv", "--threads", "3"]);
    assert_eq!(Cache::key(&a).unwrap(), Cache::key(&b).unwrap());
    let c = config(&["scan", "--q", "3", "-n", "2", "--alpha", "phi"]);
    assert_ne!(Cache::key(&a).unwrap(), Cache::key(&c).unwrap());
    let d = config(&["scan", "--q", "3", "-n", "2", "--budget", "50"]);
    assert_ne!(Cache::key(&a).unwrap(), Cache::key(&d).unwrap());
}

#[test]
fn cache_ignores_other_versions_and_garbage() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::open(dir.path()).unwrap();
    let cfg = config(&["certify", "-n", "5"]);
    let rec = commands::run(&cfg, Some(&cache)).unwrap();
    assert!(!rec.cached);
    let hit = commands::run(&cfg, Some(&cache)).unwrap();
    assert!(hit.cached);
    assert_eq!(hit.payload, rec.payload);

    let path = dir.path().join(format!("{}.json", Cache::key(&cfg).unwrap()));
    let mut stale = rec.clone();
    stale.version = "0.0.0-old".into();
    std::fs::write(&path, serde_json::to_vec(&stale).unwrap()).unwrap();
    assert!(cache.load(&cfg).unwrap().is_none());

    std::fs::write(&path, b"not json").unwrap();
    assert!(cache.load(&cfg).unwrap().is_none());
    let fresh = commands::run(&cfg, Some(&cache)).unwrap();
    assert!(!fresh.cached);
    assert!(cache.load(&cfg).unwrap().is_some());
}

#[test]
fn thread_count_does_not_change_results() {
    let cfg = config(&["sweep", "--primes", "3,5,7", "-n", "3", "-r", "3", "--alpha", "sigma"]);
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = one.install(|| commands::execute(&cfg).unwrap());
    let b = four.install(|| commands::execute(&cfg).unwrap());
    assert_eq!(a.0, b.0);
}
