#pragma once

#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "lsrank/ranking.hpp"

namespace lsrank {

// Raw (user, item, rating) triplets with label tables.  Duplicate
// (user, item) pairs are last-wins with a logged warning.
struct RatingTriplets {
  struct Entry {
    int user;
    int item;
    double rating;
  };
  std::vector<Entry> entries;  // deduplicated, ids already assigned
  std::vector<std::string> user_labels;
  std::vector<std::string> item_labels;
};

struct LabeledPairwiseData {
  PairwiseData data;
  std::vector<std::string> labels;  // vertex id -> external name
  std::string source;               // provenance: file path or construction
};

// CSV rows "user,item,rating"; a non-numeric first data row is treated as a
// header.  Rejects NaN/infinite ratings.
RatingTriplets read_ratings_csv(const std::string& path);
RatingTriplets read_ratings_csv(std::istream& in, const std::string& source);

// Items rated fewer than min_reviews times are dropped; for each surviving
// pair co-reviewed by at least one user, w = #co-reviewers and y = mean
// rating difference (head minus tail).  Throws std::runtime_error when
// fewer than 2 items survive.
LabeledPairwiseData ratings_to_pairwise(const RatingTriplets& t, int min_reviews);

// Tab-separated edge list: label_i, label_j, w, y; optional '#' header
// lines.  Duplicate edges merge by weighted mean with a warning.
LabeledPairwiseData read_edge_list(const std::string& path);
LabeledPairwiseData read_edge_list(std::istream& in, const std::string& source);
void write_edge_list(const LabeledPairwiseData& data, const std::string& path);
void write_edge_list(const LabeledPairwiseData& data, std::ostream& out);

// Game results "team_a,team_b,score_a,score_b": each game folds the score
// difference (head minus tail) into the running mean y and increments w.
LabeledPairwiseData read_schedule(const std::string& path);
LabeledPairwiseData read_schedule(std::istream& in, const std::string& source);

}  // namespace lsrank
