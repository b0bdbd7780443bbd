//! Per-group kernel classifiers, the balanced split protocol, calibrated
//! scoring and median fusion.

mod protocol;
mod split;
mod svm;

pub use protocol::{
    evaluate_accuracy, fuse_median, predict_video, train_group_model, FeatureScaler,
    GroupClassifier, GroupInstances, FRAME_SAMPLES,
};
pub use split::{split_dataset, SplitPlan};
pub use svm::{fit_platt, rbf, train_svm, PlattParams, SvmConfig, SvmModel};
