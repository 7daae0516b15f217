use super::Scalar;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Formal linear combination with exact coefficients; zeros are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lin<K: Ord>(BTreeMap<K, Scalar>);

impl<K: Ord> Default for Lin<K> {
    fn default() -> Self {
        Lin(BTreeMap::new())
    }
}

impl<K: Ord> Lin<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, k: K, v: Scalar) {
        if v.is_zero() {
            return;
        }
        match self.0.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += v;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn get(&self, k: &K) -> Scalar {
        self.0.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.0.iter()
    }

    pub fn scale(&mut self, f: &Scalar) {
        if f.is_zero() {
            self.0.clear();
        } else {
            for v in self.0.values_mut() {
                *v *= f;
            }
        }
    }

    pub fn into_vec(self) -> Vec<(K, Scalar)> {
        self.0.into_iter().collect()
    }
}

impl<K: Ord + Clone> Lin<K> {
    pub fn add_scaled(&mut self, other: &Lin<K>, f: &Scalar) {
        for (k, v) in other.iter() {
            self.add(k.clone(), v * f);
        }
    }
}

impl<K: Ord> FromIterator<(K, Scalar)> for Lin<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut l = Lin::new();
        for (k, v) in iter {
            l.add(k, v);
        }
        l
    }
}

impl<K: Ord> IntoIterator for Lin<K> {
    type Item = (K, Scalar);
    type IntoIter = std::collections::btree_map::IntoIter<K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}
