//! Verdicts shared by every pipeline: named conditions with witnesses on
//! failure, collected with the dimensions of the spaces involved.

/// Failure data: the inputs that broke a condition and the offending value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness<T> {
    pub inputs: Vec<T>,
    pub residual: T,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition<T> {
    pub name: String,
    pub passed: bool,
    /// Number of basis pairs/triples/elements examined.
    pub checked: usize,
    pub witness: Option<Witness<T>>,
    pub detail: Option<String>,
}

impl<T> Condition<T> {
    pub fn pass(name: impl Into<String>, checked: usize) -> Self {
        Condition { name: name.into(), passed: true, checked, witness: None, detail: None }
    }

    pub fn fail(name: impl Into<String>, checked: usize, witness: Witness<T>) -> Self {
        Condition { name: name.into(), passed: false, checked, witness: Some(witness), detail: None }
    }

    pub fn from_search(name: impl Into<String>, checked: usize, witness: Option<Witness<T>>) -> Self {
        let passed = witness.is_none();
        Condition { name: name.into(), passed, checked, witness, detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// Ordered list of condition verdicts plus the dimensions of every space
/// involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport<T> {
    pub conditions: Vec<Condition<T>>,
    pub dimensions: Vec<(String, usize)>,
}

impl<T> Default for ConditionReport<T> {
    fn default() -> Self {
        ConditionReport { conditions: Vec::new(), dimensions: Vec::new() }
    }
}

impl<T> ConditionReport<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, condition: Condition<T>) -> bool {
        let passed = condition.passed;
        self.conditions.push(condition);
        passed
    }

    pub fn dimension(&mut self, name: impl Into<String>, dim: usize) {
        self.dimensions.push((name.into(), dim));
    }

    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Condition<T>> {
        self.conditions.iter().find(|c| c.name == name)
    }

    pub fn dim(&self, name: &str) -> Option<usize> {
        self.dimensions.iter().find(|(n, _)| n == name).map(|(_, d)| *d)
    }

    pub fn extend(&mut self, other: ConditionReport<T>) {
        self.conditions.extend(other.conditions);
        self.dimensions.extend(other.dimensions);
    }
}
