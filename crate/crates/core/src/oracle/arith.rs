use std::sync::Arc;

use crate::fsa::{Alphabet, Word};
use crate::groups::AmalgamSpec;
use crate::rewriting::RewritingSystem;

/// Canonical element keys: equal keys iff equal group elements.
pub trait GroupArith: Sync {
    fn alphabet(&self) -> &Arc<Alphabet>;
    fn key(&self, w: &[usize]) -> Word;
    fn render_key(&self, k: &[usize]) -> String;
}

/// Graph product keys are irreducible `T`-words.
impl GroupArith for RewritingSystem {
    fn alphabet(&self) -> &Arc<Alphabet> {
        self.spec().alphabet()
    }

    fn key(&self, w: &[usize]) -> Word {
        self.irr_of_x(w)
    }

    fn render_key(&self, k: &[usize]) -> String {
        self.alphabet().render(k)
    }
}

/// Amalgam keys are normal forms written as words.
impl GroupArith for AmalgamSpec {
    fn alphabet(&self) -> &Arc<Alphabet> {
        AmalgamSpec::alphabet(self)
    }

    fn key(&self, w: &[usize]) -> Word {
        self.form_word(&self.normal_form(w).expect("letters of the amalgam"))
    }

    fn render_key(&self, k: &[usize]) -> String {
        if k.is_empty() {
            return "1".into();
        }
        self.alphabet().render_word(k)
    }
}
