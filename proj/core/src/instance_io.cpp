#include "blockip/instance_io.hpp"

#include <cctype>
#include <sstream>

namespace blockip {

namespace {

struct Lines {
    std::vector<std::pair<int, std::string>> rows;  // (line number, content)
    std::size_t pos = 0;

    explicit Lines(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int num = 0;
        while (std::getline(in, line)) {
            ++num;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::size_t b = line.find_first_not_of(" \t\r");
            if (b == std::string::npos) continue;
            std::size_t e = line.find_last_not_of(" \t\r");
            rows.push_back({num, line.substr(b, e - b + 1)});
        }
    }
    bool done() const { return pos >= rows.size(); }
    int here() const { return done() ? (rows.empty() ? 1 : rows.back().first) : rows[pos].first; }
    const std::string& peek() const {
        if (done()) throw ParseError(here(), "unexpected end of file");
        return rows[pos].second;
    }
    std::string next() {
        std::string s = peek();
        ++pos;
        return s;
    }
    void expect(const std::string& kw) {
        if (next() != kw) throw ParseError(rows[pos - 1].first, "expected '" + kw + "'");
    }
};

std::vector<Int> parse_ints(const std::string& s, int line) {
    std::vector<Int> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        std::size_t i = tok[0] == '-' ? 1 : 0;
        if (i == tok.size()) throw ParseError(line, "bad integer '" + tok + "'");
        for (; i < tok.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(tok[i])))
                throw ParseError(line, "bad integer '" + tok + "'");
        out.push_back(Int(tok));
    }
    return out;
}

std::size_t parse_dim(Lines& L, const std::string& kw) {
    int line = L.here();
    std::string s = L.next();
    if (s.rfind(kw + " ", 0) != 0) throw ParseError(line, "expected '" + kw + " n'");
    std::vector<Int> v = parse_ints(s.substr(kw.size() + 1), line);
    if (v.size() != 1 || v[0] < 0 || !v[0].fits_ulong_p())
        throw ParseError(line, "bad dimension in '" + kw + "'");
    return static_cast<std::size_t>(v[0].get_ui());
}

IntVec parse_vec(Lines& L, const std::string& kw, const VarTuple& idx) {
    L.expect(kw);
    int line = L.here();
    std::vector<Int> v = parse_ints(L.next(), line);
    if (v.size() != idx->size())
        throw ParseError(line, "vector '" + kw + "' has " + std::to_string(v.size()) +
                                   " entries, expected " + std::to_string(idx->size()));
    return IntVec(idx, std::move(v));
}

IntMat parse_mat(Lines& L, const std::string& kw, const VarTuple& cols,
                 const VarTuple& rows) {
    L.expect(kw);
    std::vector<std::vector<Int>> data;
    for (std::size_t r = 0; r < rows->size(); ++r) {
        int line = L.here();
        std::vector<Int> row = parse_ints(L.next(), line);
        if (row.size() != cols->size())
            throw ParseError(line, "matrix '" + kw + "' row has " +
                                       std::to_string(row.size()) + " entries, expected " +
                                       std::to_string(cols->size()));
        data.push_back(std::move(row));
    }
    return mat_from_rows(cols, rows, data);
}

// "BRICK" or "BRICK xM"; returns the multiplicity.
Int parse_brick_header(Lines& L) {
    int line = L.here();
    std::string s = L.next();
    if (s == "BRICK") return 1;
    if (s.rfind("BRICK x", 0) == 0) {
        std::vector<Int> v = parse_ints(s.substr(7), line);
        if (v.size() == 1 && v[0] >= 1) return v[0];
    }
    throw ParseError(line, "expected 'BRICK' or 'BRICK xM'");
}

TwoStageProgram parse_twostage(Lines& L) {
    TwoStageProgram P;
    P.globals = make_vars("u", parse_dim(L, "GLOBALS"));
    P.locals = make_vars("v", parse_dim(L, "LOCALS"));
    P.rowNames = make_vars("r", parse_dim(L, "LOCALROWS"));
    while (L.peek() != "END") {
        Int mult = parse_brick_header(L);
        TwoStageBrick br;
        br.A = parse_mat(L, "A", P.globals, P.rowNames);
        br.D = parse_mat(L, "D", P.locals, P.rowNames);
        br.b = parse_vec(L, "b", P.rowNames);
        if (L.peek() == "c")
            throw ParseError(L.here(), "two-stage programs take no objective line");
        L.expect("ENDBRICK");
        for (Int m = 0; m < mult; ++m) P.bricks.push_back(br);
    }
    L.expect("END");
    return P;
}

NFoldProgram parse_nfold(Lines& L) {
    NFoldProgram P;
    P.locals = make_vars("y", parse_dim(L, "LOCALS"));
    P.linkRows = make_vars("s", parse_dim(L, "LINKROWS"));
    P.localRows = make_vars("r", parse_dim(L, "LOCALROWS"));
    P.C = parse_mat(L, "C", P.locals, P.linkRows);
    P.a = parse_vec(L, "a", P.linkRows);
    while (L.peek() != "END") {
        NFoldBrick br;
        br.count = parse_brick_header(L);
        br.D = parse_mat(L, "D", P.locals, P.localRows);
        br.b = parse_vec(L, "b", P.localRows);
        br.c = L.peek() == "c" ? parse_vec(L, "c", P.locals) : IntVec(P.locals);
        L.expect("ENDBRICK");
        P.bricks.push_back(std::move(br));
    }
    L.expect("END");
    return P;
}

FourBlockProgram parse_fourblock(Lines& L) {
    FourBlockProgram P;
    P.globals = make_vars("x", parse_dim(L, "GLOBALS"));
    P.locals = make_vars("y", parse_dim(L, "LOCALS"));
    P.linkRows = make_vars("s", parse_dim(L, "LINKROWS"));
    P.localRows = make_vars("r", parse_dim(L, "LOCALROWS"));
    P.Bhat = parse_mat(L, "Bmat", P.globals, P.linkRows);
    P.C = parse_mat(L, "C", P.locals, P.linkRows);
    P.A = parse_mat(L, "A", P.globals, P.localRows);
    P.a = parse_vec(L, "a", P.linkRows);
    while (L.peek() != "END") {
        Int mult = parse_brick_header(L);
        FourBlockBrick br;
        br.D = parse_mat(L, "D", P.locals, P.localRows);
        br.b = parse_vec(L, "b", P.localRows);
        L.expect("ENDBRICK");
        for (Int m = 0; m < mult; ++m) P.bricks.push_back(br);
    }
    L.expect("END");
    return P;
}

void put_vec(std::ostringstream& os, const std::string& kw, const IntVec& v) {
    os << kw << '\n';
    for (std::size_t i = 0; i < v.dim(); ++i) os << (i ? " " : "") << v[i].get_str();
    os << '\n';
}

void put_mat(std::ostringstream& os, const std::string& kw, const IntMat& M) {
    os << kw << '\n';
    for (std::size_t i = 0; i < M.nrows(); ++i) {
        for (std::size_t j = 0; j < M.ncols(); ++j)
            os << (j ? " " : "") << M.col[j][i].get_str();
        os << '\n';
    }
}

}  // namespace

Instance parse_instance(const std::string& text) {
    Lines L(text);
    int line = L.here();
    std::string head = L.next();
    if (head == "TWOSTAGE") return parse_twostage(L);
    if (head == "NFOLD") return parse_nfold(L);
    if (head == "FOURBLOCK") return parse_fourblock(L);
    throw ParseError(line, "expected TWOSTAGE, NFOLD, or FOURBLOCK header");
}

std::string format_instance(const TwoStageProgram& P) {
    std::ostringstream os;
    os << "TWOSTAGE\n";
    os << "GLOBALS " << P.globals->size() << '\n';
    os << "LOCALS " << P.locals->size() << '\n';
    os << "LOCALROWS " << P.rowNames->size() << '\n';
    for (const TwoStageBrick& br : P.bricks) {
        os << "BRICK\n";
        put_mat(os, "A", br.A);
        put_mat(os, "D", br.D);
        put_vec(os, "b", br.b);
        os << "ENDBRICK\n";
    }
    os << "END\n";
    return os.str();
}

std::string format_instance(const NFoldProgram& P) {
    std::ostringstream os;
    os << "NFOLD\n";
    os << "LOCALS " << P.locals->size() << '\n';
    os << "LINKROWS " << P.linkRows->size() << '\n';
    os << "LOCALROWS " << P.localRows->size() << '\n';
    put_mat(os, "C", P.C);
    put_vec(os, "a", P.a);
    for (const NFoldBrick& br : P.bricks) {
        os << "BRICK";
        if (br.count != 1) os << " x" << br.count.get_str();
        os << '\n';
        put_mat(os, "D", br.D);
        put_vec(os, "b", br.b);
        if (!br.c.is_zero()) put_vec(os, "c", br.c);
        os << "ENDBRICK\n";
    }
    os << "END\n";
    return os.str();
}

std::string format_instance(const FourBlockProgram& P) {
    std::ostringstream os;
    os << "FOURBLOCK\n";
    os << "GLOBALS " << P.globals->size() << '\n';
    os << "LOCALS " << P.locals->size() << '\n';
    os << "LINKROWS " << P.linkRows->size() << '\n';
    os << "LOCALROWS " << P.localRows->size() << '\n';
    put_mat(os, "Bmat", P.Bhat);
    put_mat(os, "C", P.C);
    put_mat(os, "A", P.A);
    put_vec(os, "a", P.a);
    for (const FourBlockBrick& br : P.bricks) {
        os << "BRICK\n";
        put_mat(os, "D", br.D);
        put_vec(os, "b", br.b);
        os << "ENDBRICK\n";
    }
    os << "END\n";
    return os.str();
}

std::string format_instance(const Instance& inst) {
    return std::visit([](const auto& p) { return format_instance(p); }, inst);
}

std::string format_vector(const IntVec& v) {
    std::string s;
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (i) s += ' ';
        s += v[i].get_str();
    }
    return s;
}

}  // namespace blockip
