#pragma once

#include "hardchoice/model.hpp"

namespace hardchoice::oracle {

// Brute-force reference classifier, written separately from jury_classify.
// It enumerates every juror's exact utility comparison, counts the strict
// votes on each side and reads the relation off the two counts. Corpus ground
// truth is produced with this, never with the production classifier.
Relation brute_force_relation(const Jury& jury, const OptionPoint& a, const OptionPoint& b);

}  // namespace hardchoice::oracle
