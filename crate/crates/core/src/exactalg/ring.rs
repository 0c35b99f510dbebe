use std::fmt;
use std::sync::Arc;

/// Ordered list of variable names shared by every polynomial of a ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Arc<[String]>,
}

impl Ring {
    pub fn new<I, S>(vars: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            assert!(
                !vars[..i].contains(v),
                "duplicate variable `{v}` in ring signature"
            );
        }
        Ring { vars: vars.into() }
    }

    /// The ring with no variables (the rationals themselves).
    pub fn constants() -> Self {
        Ring::new(Vec::<String>::new())
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn same_as(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }

    /// A name derived from `base` that does not occur in this ring: `base`,
    /// then `base1`, `base2`, ...
    pub fn fresh_name(&self, base: &str) -> String {
        fresh_among(base, self.vars.iter().map(String::as_str))
    }

    /// Appends variables, renaming any that would clash. Returns the new
    /// ring and the names actually used for the appended variables.
    pub fn extend<S: AsRef<str>>(&self, names: &[S]) -> (Ring, Vec<String>) {
        let mut all: Vec<String> = self.vars.to_vec();
        let mut used = Vec::with_capacity(names.len());
        for n in names {
            let name = fresh_among(n.as_ref(), all.iter().map(String::as_str));
            all.push(name.clone());
            used.push(name);
        }
        (Ring::new(all), used)
    }
}

pub(crate) fn fresh_among<'a>(base: &str, taken: impl Iterator<Item = &'a str> + Clone) -> String {
    if !taken.clone().any(|t| t == base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}{i}"))
        .find(|cand| !taken.clone().any(|t| t == cand))
        .expect("unbounded search")
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.vars.join(", "))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
