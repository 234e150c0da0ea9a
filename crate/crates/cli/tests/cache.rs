use affine_fk_cli::cache::{Cache, CacheEntry, CacheKey, Lookup, SCHEMA_VERSION};
use affine_fk_cli::compute::schubert_payload;
use serde_json::json;

fn key() -> CacheKey {
    CacheKey::new(3, "schubert", 4)
}

#[test]
fn store_then_load_is_the_identity() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::open(dir.path()).unwrap();
    let entry = CacheEntry::new(key(), schubert_payload(3, 4).unwrap());
    assert_eq!(entry.payload["polynomials"].as_array().unwrap().len(), 12);
    cache.store(&entry).unwrap();
    assert_eq!(cache.load(&key()).unwrap(), Lookup::Hit(entry));
    // No temporary files are left behind.
    let names: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(names, vec![std::ffi::OsString::from("schubert-n3-d4.json")]);
}

#[test]
fn tampered_entries_are_quarantined_and_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::open(dir.path()).unwrap();
    let mut entry = CacheEntry::new(key(), json!({"value": 1}));
    entry.digest = "0".repeat(64);
    cache.store(&entry).unwrap();
    let Lookup::Quarantined(moved) = cache.load(&key()).unwrap() else {
        panic!("tampered digest accepted")
    };
    assert!(moved.starts_with(dir.path().join("quarantine")));
    assert!(moved.exists());
    let mut calls = 0;
    let payload = cache
        .get_or_compute(&key(), || {
            calls += 1;
            Ok(json!({"value": 2}))
        })
        .unwrap();
    assert_eq!((payload, calls), (json!({"value": 2}), 1));
    assert!(matches!(cache.load(&key()).unwrap(), Lookup::Hit(_)));

    // Tamper again: a second quarantine file, nothing deleted.
    std::fs::write(cache.path(&key()), b"{ not json").unwrap();
    let again = cache.get_or_compute(&key(), || Ok(json!({"value": 3}))).unwrap();
    assert_eq!(again, json!({"value": 3}));
    assert_eq!(std::fs::read_dir(dir.path().join("quarantine")).unwrap().count(), 2);
}

#[test]
fn version_mismatch_is_a_miss_and_rebuilds() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::open(dir.path()).unwrap();
    let mut old = CacheEntry::new(key(), json!("old"));
    old.version = SCHEMA_VERSION + 1;
    cache.store(&old).unwrap();
    assert_eq!(cache.load(&key()).unwrap(), Lookup::Stale(SCHEMA_VERSION + 1));
    let fresh = cache.get_or_compute(&key(), || Ok(json!("new"))).unwrap();
    assert_eq!(fresh, json!("new"));
    let Lookup::Hit(e) = cache.load(&key()).unwrap() else {
        panic!()
    };
    assert_eq!(e.version, SCHEMA_VERSION);
    assert!(!dir.path().join("quarantine").exists());
}

#[test]
fn hits_do_not_recompute() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::open(dir.path()).unwrap();
    cache.get_or_compute(&key(), || Ok(json!(1))).unwrap();
    let v = cache.get_or_compute(&key(), || panic!("recomputed a hit")).unwrap();
    assert_eq!(v, json!(1));
}

#[test]
fn io_errors_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain-file");
    std::fs::write(&file, b"x").unwrap();
    let err = Cache::open(file.join("sub"))
        .err()
        .expect("cannot create a directory under a file");
    assert_eq!(err.exit_code(), 3);
    assert!(err.to_string().contains("plain-file"));
}
