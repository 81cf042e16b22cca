#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "glimca/alphabet.hpp"

namespace glimca {

/// A local rule evaluated per neighborhood without a dense table. Used when
/// |A|^(2r+1) exceeds the dense-table cap.
class RuleProgram {
 public:
  virtual ~RuleProgram() = default;
  /// `neighborhood` has length 2r+1, centered on the target cell.
  virtual Symbol apply(std::span<const Symbol> neighborhood) const = 0;
  /// Short identifier used when the rule is written back to a ".ca" file.
  virtual std::string kind() const = 0;
};

/// Radius-r local rule F : A^(2r+1) -> A. Neighborhoods are always the
/// symmetric window [-r, r]; one-sided rules ignore the unused slots.
class LocalRule {
 public:
  using Function = std::function<Symbol(std::span<const Symbol>)>;

  /// Tabulates `f` over every neighborhood. Throws BudgetError above the
  /// dense-table cap.
  static LocalRule tabulate(Alphabet alphabet, int radius, const Function& f, std::string name = {});
  static LocalRule from_table(Alphabet alphabet, int radius, std::vector<Symbol> table,
                              std::string name = {});
  static LocalRule structured(Alphabet alphabet, int radius,
                              std::shared_ptr<const RuleProgram> program, std::string name = {});

  /// Named rules at radius 1: "identity", "min" (min(c, right) in index
  /// order), "shift" (F = right, i.e. the left shift map), "swap"
  /// (c -> |A|-1-c; the 0<->1 swap on a binary alphabet).
  static LocalRule builtin(std::string_view name, Alphabet alphabet);

  const Alphabet& alphabet() const { return alphabet_; }
  int radius() const { return radius_; }
  int width() const { return 2 * radius_ + 1; }
  const std::string& name() const { return name_; }
  bool is_dense() const { return program_ == nullptr; }
  const std::vector<Symbol>& table() const { return table_; }
  const RuleProgram* program() const { return program_.get(); }

  Symbol apply(std::span<const Symbol> neighborhood) const {
    if (program_) return program_->apply(neighborhood);
    std::uint64_t code = 0;
    for (Symbol s : neighborhood) code = code * alphabet_.size() + s;
    return table_[code];
  }

 private:
  LocalRule(Alphabet a, int r, std::string name) : alphabet_(std::move(a)), radius_(r), name_(std::move(name)) {}

  Alphabet alphabet_;
  int radius_ = 0;
  std::string name_;
  std::vector<Symbol> table_;
  std::shared_ptr<const RuleProgram> program_;
};

}  // namespace glimca
