#pragma once

#include "unitfield/error.hpp"
#include "unitfield/rational.hpp"
#include "unitfield/poly.hpp"
#include "unitfield/factor.hpp"
#include "unitfield/ratfunc.hpp"
#include "unitfield/place.hpp"
#include "unitfield/funfield.hpp"
#include "unitfield/covers.hpp"
#include "unitfield/moduli.hpp"
#include "unitfield/vojta.hpp"
#include "unitfield/serialize.hpp"
#include "unitfield/generate.hpp"
#include "unitfield/harness.hpp"
#include "unitfield/suites.hpp"
