use depcat_core::cwf::check_laws;
use depcat_core::signature::ValidatedSignature;
use depcat_core::term_model::{closed_types, contexts, TermModel, TermSampler};

#[test]
fn all_small_contexts_satisfy_every_law() {
    let sig = ValidatedSignature::empty();
    let m = TermModel::new(&sig);
    let mut s = TermSampler::new(&sig, 11);
    s.types = closed_types(2, &[]);
    let ctxs = contexts(2, &closed_types(2, &[]));
    let seeds = s.seeds(&ctxs);
    let r = check_laws(&m, &mut s, &seeds);
    assert!(r.all_passed(), "{}", r);
    assert!(r.unchecked().is_empty(), "{:?}", r.unchecked());
}
