//! Build-once shared tables.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

/// A concurrent memo table. Values are computed outside the lock, so two
/// threads may race to compute the same entry; the first insert wins and
/// every caller sees that value.
pub(crate) struct Memo<K, V> {
    map: Mutex<HashMap<K, Arc<V>>>,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub(crate) fn new() -> Self {
        Memo {
            map: Mutex::new(HashMap::new()),
        }
    }

    pub(crate) fn get(&self, key: &K) -> Option<Arc<V>> {
        self.map.lock().unwrap().get(key).cloned()
    }

    pub(crate) fn get_or_try_insert<E>(&self, key: &K, f: impl FnOnce() -> Result<V, E>) -> Result<Arc<V>, E> {
        if let Some(v) = self.get(key) {
            return Ok(v);
        }
        let value = Arc::new(f()?);
        let mut map = self.map.lock().unwrap();
        Ok(map.entry(key.clone()).or_insert(value).clone())
    }

    pub(crate) fn get_or_insert(&self, key: &K, f: impl FnOnce() -> V) -> Arc<V> {
        self.get_or_try_insert::<std::convert::Infallible>(key, || Ok(f()))
            .unwrap_or_else(|e| match e {})
    }
}

impl<K: Eq + Hash + Clone, V> Default for Memo<K, V> {
    fn default() -> Self {
        Self::new()
    }
}
