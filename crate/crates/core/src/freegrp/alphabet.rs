use super::FreeGroupError;

/// Display names for the free generators, indexed from 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, FreeGroupError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(FreeGroupError::EmptyAlphabet);
        }
        for (i, n) in names.iter().enumerate() {
            let valid = !n.is_empty()
                && n.chars().all(|c| c.is_alphanumeric() || c == '_')
                && !n.chars().next().is_some_and(|c| c.is_ascii_digit());
            if !valid {
                return Err(FreeGroupError::BadName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(FreeGroupError::DuplicateName(n.clone()));
            }
        }
        Ok(Alphabet { names })
    }

    /// Convenience for literal alphabets such as `Alphabet::of(&["x", "y"])`.
    pub fn of(names: &[&str]) -> Self {
        Self::new(names.iter().copied()).expect("valid literal alphabet")
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, generator: usize) -> &str {
        &self.names[generator]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// This alphabet followed by `extra` names.
    pub fn extended<S: Into<String>>(&self, extra: impl IntoIterator<Item = S>) -> Result<Self, FreeGroupError> {
        Self::new(self.names.iter().cloned().chain(extra.into_iter().map(Into::into)))
    }
}
