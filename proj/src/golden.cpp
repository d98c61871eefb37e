#include "lgf/golden.hpp"

#include "lgf/error.hpp"

namespace lgf::golden {

const LinearODE& ode_2d() {
  static const LinearODE ode = ode_from_expressions({"z", "3*z^2-1", "z*(z^2-1)"});
  return ode;
}

const LinearODE& ode_4d() {
  static const LinearODE ode = ode_from_expressions({
      "12*(9*z^5+98*z^4+382*z^3+702*z^2+632*z+256)*z",
      "12*(45*z^7+604*z^6+2939*z^5+6734*z^4+7633*z^3+3716*z^2+224*z-384)",
      "6*(81*z^7+1286*z^6+7432*z^5+19898*z^4+25286*z^3+11080*z^2-5248*z-5376)*z",
      "2*(3*z+4)*(21*z^6+356*z^5+2079*z^4+4920*z^3+3676*z^2-2304*z-3456)*z^2",
      "(z-1)*(z+2)*(z+3)*(z+6)*(z+8)*(3*z+4)^2*z^3",
  });
  return ode;
}

const LinearODE& ode_5d() {
  static const LinearODE ode = ode_from_expressions({
      "30*(7525440*z^11+163913184*z^10+1443544710*z^9+6925739310*z^8+19123388575*z^7+21336230625*z^6"
      "+36477006875*z^5+187923165625*z^4-55567000000*z^3-346865625000*z^2+84037500000*z+27000000000)",
      "10*(167064768*z^12+4143853440*z^11+40678130502*z^10+209673119160*z^9+607021304825*z^8"
      "+689643286650*z^7-135661728250*z^6+3711617481250*z^5+2664478321875*z^4-21210430812500*z^3"
      "-7268326875000*z^2+4816462500000*z-189000000000)",
      "5*(496679040*z^13+13819981248*z^12+149186684934*z^11+810956145330*z^10+2287368823475*z^9"
      "+1646226060075*z^8-8282515456375*z^7-6199228765625*z^6+13367806743750*z^5-110925736437500*z^4"
      "-133825053750000*z^3+44457862500000*z^2+5055750000000*z-3240000000000)",
      "5*(255864960*z^13+7892060544*z^12+92744995638*z^11+524857986060*z^10+1350059072325*z^9"
      "-465440555100*z^8-13545524756500*z^7-26918293320000*z^6-3649915059375*z^5-77498059625000*z^4"
      "-190176960000000*z^3+40530375000000*z^2+45343125000000*z-13162500000000)*z",
      "10*(27279720*z^13+923795772*z^12+11725276842*z^11+68439921540*z^10+148313757125*z^9"
      "-382134335775*z^8-3351125770500*z^7-7801785421250*z^6-3779011321875*z^5-7716298734375*z^4"
      "-39702348750000*z^3+3393646875000*z^2+23905125000000*z-5568750000000)*z^2",
      "8*(z+5)*(3057210*z^12+97471734*z^11+1048560285*z^10+3939663705*z^9-4878146975*z^8"
      "-87265479875*z^7-304623830625*z^6-266627903125*z^5+254876515625*z^4-1289447109375*z^3"
      "-503550000000*z^2+1774828125000*z-354375000000)*z^3",
      "16*(z-5)*(z-1)*(z+5)^2*(z+10)*(z+15)*(3*z+5)*(15678*z^6+144776*z^5+449735*z^4+933650*z^3"
      "-1053375*z^2+3465000*z-675000)*z^4",
  });
  return ode;
}

const LinearRecurrence& partial_sum_recurrence_4d() {
  static const LinearRecurrence rec = recurrence_from_expressions({
      "(n+2)*(n+3)^2*(n+4)*(35*n^2+420*n+1252)",
      "(n+3)*(n+4)*(595*n^4+11375*n^3+79874*n^2+244384*n+276024)",
      "3*(n+4)*(1015*n^5+24780*n^4+240253*n^3+1156976*n^2+2769392*n+2638272)",
      "3325*n^6+107100*n^5+1427695*n^4+10080600*n^3+39767416*n^2+83134488*n+71984160",
      "-4*(2065*n^6+62580*n^5+788848*n^4+5295615*n^3+19973086*n^2+40139838*n+33590844)",
      "-12*(735*n^6+25200*n^5+359282*n^4+2725632*n^3+11601091*n^2+26259960*n+24690708)",
      "288*(35*n^2+350*n+867)*(n+6)^4",
  });
  return rec;
}

const std::vector<Rat>& partial_sum_initials_4d() {
  static const std::vector<Rat> v = {Rat(1), Rat(1), Rat(25, 24), Rat(19, 18), Rat(1637, 1536), Rat(549, 512)};
  return v;
}

IntPoly ode_6d_leading_known_part() {
  const auto polys = polys_from_expressions(
      {"z^6*(z-3)*(z-1)*(z+4)*(z+5)*(z+9)*(z+15)^2*(z+24)*(2*z+3)*(2*z+15)*(4*z+15)*(7*z+60)"}, "z");
  return polys.front();
}

LinearODE load_ode_6d(const std::string& path) {
  LinearODE ode = read_ode_file(path);
  if (ode.order() != ode_6d_order)
    throw ValidationError("6D ODE must have order " + std::to_string(ode_6d_order) + ", got " +
                          std::to_string(ode.order()));
  if (ode.degree() != ode_6d_degree)
    throw ValidationError("6D ODE must have degree " + std::to_string(ode_6d_degree) + ", got " +
                          std::to_string(ode.degree()));
  try {
    (void)exact_quotient(ode.leading(), ode_6d_leading_known_part());
  } catch (const ValidationError&) {
    throw ValidationError("6D ODE leading coefficient lacks the expected singular factors");
  }
  return ode;
}

const std::vector<ReturnDigits>& reference_digits() {
  static const std::vector<ReturnDigits> v = {
      {4, "1.10584379792120476018299547088585107443954623663875285836499",
       "0.09571315417256289673531676490121018570070881963801735768774"},
      {5, "1.04885235135491485162956376369999275945402550465206640313845",
       "0.04657695746384802419337442059480329107640239774632112930532"},
      {6, "1.02774910062749883985936367927396850209243990900114872425172",
       "0.02699987828795612426936417542619638021612262676239501413843"},
  };
  return v;
}

const std::vector<std::pair<int, std::string>>& return_probability_table() {
  static const std::vector<std::pair<int, std::string>> v = {
      {2, "1"},
      {3, "0.256318236504649"},
      {4, "0.095713154172563"},
      {5, "0.046576957463848"},
      {6, "0.026999878287956"},
  };
  return v;
}

const TwoDimExample& two_dim_example() {
  static const TwoDimExample ex = {
      "(x1*x2*z-1)*Dz+x1*x2",
      "(x2^2-1)*(x1*x2*z-1)*Dx2+(2*x1*x2^2*z-x1*z-x2)",
      "(x1^2-1)*(x1*x2*z-1)*Dx1+(2*x1^2*x2*z-x1-x2*z)",
      "z*(z^2-1)*Dz^2+(3*z^2-1)*Dz+z",
      "(x2-x1^2*x2)/(x1*x2*z-1)",
      "(x2*z-x2^3*z)/(x1*x2*z-1)",
      "z*(z^2-1)/(x1*x2*z-1)*Dz+(x1*x2*z*(z^2+1)-3*z^2+1)/(x1*x2*z-1)^2",
      "-x2/(x1*x2*z-1)^2",
  };
  return ex;
}

const std::string& certificate_2d() {
  static const std::string s =
      "# lgf-cert d=2 integrate=x1,x2\n"
      "telescoper\n"
      "z*(z^2-1)*Dz^2\n"
      "(3*z^2-1)*Dz\n"
      "z\n"
      "delta x1\n"
      "(x2-x1^2*x2)/(x1*x2*z-1)\n"
      "delta x2\n"
      "(x2*z-x2^3*z)/(x1*x2*z-1)\n";
  return s;
}

const std::string& certificate_2d_stage_z() {
  static const std::string s =
      "# lgf-cert d=2 integrate=x1\n"
      "telescoper\n"
      "(x2^2*z^2-1)*Dz+x2^2*z\n"
      "delta x1\n"
      "(x1^2-1)*x2\n";
  return s;
}

const std::string& certificate_2d_stage_x2() {
  static const std::string s =
      "# lgf-cert d=2 integrate=x1\n"
      "telescoper\n"
      "(x2^2-1)*(x2^2*z^2-1)*Dx2+x2*(2*x2^2*z^2-z^2-1)\n"
      "delta x1\n"
      "(x1^2-1)*(x2^2-1)*z\n";
  return s;
}

const std::string& certificate_2d_second_stage() {
  static const std::string s =
      "# lgf-cert d=2 integrate=x2\n"
      "# the x1-integral, defined by the two telescopers above\n"
      "annihilator\n"
      "(x2^2*z^2-1)*Dz+x2^2*z\n"
      "annihilator\n"
      "(x2^2-1)*(x2^2*z^2-1)*Dx2+x2*(2*x2^2*z^2-z^2-1)\n"
      "telescoper\n"
      "z*(z^2-1)*Dz^2+(3*z^2-1)*Dz+z\n"
      "delta x2\n"
      "-x2*z*(x2^2-1)/(x2^2*z^2-1)\n";
  return s;
}

}  // namespace lgf::golden
