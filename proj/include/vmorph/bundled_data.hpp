#pragma once

// Data files from data/ compiled into the library.

namespace vmorph::bundled {

extern const char* const kStdlibIndex;
extern const char* const kPurityWhitelist;
extern const char* const kLexicon;

}  // namespace vmorph::bundled
