#pragma once

// Minimal real arithmetic for template coefficients: numbers, named
// parameters, + - * / ^, unary minus, parentheses and sqrt/exp/log.

#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace toric::io {

class ExprError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Expr {
 public:
  Expr(std::string text, const std::map<std::string, double>& vars) : s_(std::move(text)), vars_(vars) {}

  double evaluate() {
    pos_ = 0;
    double v = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

  /// Identifiers that are not function names.
  static std::set<std::string> identifiers(const std::string& text) {
    std::set<std::string> out;
    for (std::size_t i = 0; i < text.size();) {
      if (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_') {
        std::size_t j = i;
        while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
        std::string id = text.substr(i, j - i);
        bool exponent_marker = (id[0] == 'e' || id[0] == 'E') && i > 0 && std::isdigit(static_cast<unsigned char>(text[i - 1]));
        if (!exponent_marker && !is_function(id)) out.insert(id);
        i = j;
      } else if (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.') {
        // skip a whole number literal, exponent included
        std::size_t used = 0;
        try {
          std::stod(text.substr(i), &used);
        } catch (...) {
          used = 1;
        }
        i += std::max<std::size_t>(used, 1);
      } else {
        ++i;
      }
    }
    return out;
  }

 private:
  static bool is_function(const std::string& id) { return id == "sqrt" || id == "exp" || id == "log"; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ExprError("expression \"" + s_ + "\" at column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  double sum() {
    double v = product();
    for (;;) {
      if (eat('+')) v += product();
      else if (eat('-')) v -= product();
      else return v;
    }
  }

  double product() {
    double v = unary();
    for (;;) {
      if (eat('*')) v *= unary();
      else if (eat('/')) v /= unary();
      else return v;
    }
  }

  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  // right associative; binds tighter than unary minus on its left only
  double power() {
    double b = atom();
    if (eat('^')) return std::pow(b, unary());
    return b;
  }

  double atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      double v = sum();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(s_.substr(pos_), &used);
      } catch (...) {
        fail("bad number");
      }
      pos_ += used;
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = pos_;
      while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
      std::string id = s_.substr(pos_, j - pos_);
      pos_ = j;
      if (is_function(id)) {
        if (!eat('(')) fail("expected '(' after " + id);
        double a = sum();
        if (!eat(')')) fail("missing ')'");
        if (id == "sqrt") return std::sqrt(a);
        if (id == "exp") return std::exp(a);
        return std::log(a);
      }
      auto it = vars_.find(id);
      if (it == vars_.end()) fail("unknown parameter '" + id + "'");
      return it->second;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string s_;
  const std::map<std::string, double>& vars_;
  std::size_t pos_ = 0;
};

inline double evaluate_expression(const std::string& text, const std::map<std::string, double>& vars) {
  return Expr(text, vars).evaluate();
}

}  // namespace toric::io
