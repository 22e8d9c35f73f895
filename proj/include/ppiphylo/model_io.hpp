#pragma once

#include <iosfwd>

#include "ppiphylo/learn.hpp"
#include "ppiphylo/pipeline.hpp"

// Versioned JSON model documents. Loaders throw FormatError for malformed
// or mismatched documents.
namespace ppiphylo::model_io {

inline constexpr int kFormatVersion = 1;

void save_linear(std::ostream& out, const learn::LinearModel& m);
learn::LinearModel load_linear(std::istream& in);

void save_multiclass(std::ostream& out, const learn::MulticlassModel& m);
learn::MulticlassModel load_multiclass(std::istream& in);

void save_predictor(std::ostream& out, const pipeline::PredictorModel& m);
pipeline::PredictorModel load_predictor(std::istream& in);

void save_hierarchy(std::ostream& out, const pipeline::HierarchyModel& m);
pipeline::HierarchyModel load_hierarchy(std::istream& in);

}  // namespace ppiphylo::model_io
