mod config;
mod error;

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use entropoid::analysis::{
    collision_entropy_experiment, delp_brute, delp_random, dichotomy_entropoid, mitm_success_rate, partition_xi,
    partitions_to_csv, random_instance, reproduce_tables, small_entropoid, TableSet, COLLISION_ESTIMATOR,
};
use entropoid::field::gen_safe_prime;
use entropoid::generators::{gen, gen_q, GeneratorCertificate};
use entropoid::kex::{KexSuite, DEFAULT_BASE};
use entropoid::powindex::random_index;
use entropoid::sig::{key_file_info, HashAlg, Scheme, SigParams};
use entropoid::{pow_fast, Element, EntropoidParams, Mont, PowerIndex, Residue};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use config::{parse_pair, parse_scheme, read_kv, scheme_name, Config, ParamsFile};
use error::CliError;

/// Entropoid based cryptography: parameters, key exchange, signatures and
/// toy-scale analysis.
#[derive(Parser, Debug)]
#[command(name = "entropoid", version)]
struct Cli {
    /// `key=value` file with defaults for lambda, base, scheme, seed and out.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for every random choice; runs with the same seed are identical.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Bit length of the prime.
    #[arg(long, global = true)]
    lambda: Option<u32>,
    /// Base of power indices.
    #[arg(long, global = true)]
    base: Option<u32>,
    /// Signature scheme: `cderp` or `conservative`.
    #[arg(long, global = true, value_parser = parse_scheme_arg)]
    scheme: Option<Scheme>,
    /// Output path.
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

fn parse_scheme_arg(s: &str) -> Result<Scheme, String> {
    parse_scheme(s).map_err(|e| e.to_string())
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Fresh safe prime and random entropoid constants.
    Params,
    /// Find a generator of the full unit quasigroup.
    Gen {
        #[arg(long)]
        params: Option<PathBuf>,
    },
    /// Find a generator of the order-q^2 Sylow subquasigroup.
    Genq {
        #[arg(long)]
        params: Option<PathBuf>,
    },
    /// Both key-exchange roles over an in-process byte pipe.
    KexDemo {
        #[arg(long)]
        params: Option<PathBuf>,
    },
    /// Signing key pair; writes `<out>.key` and `<out>.pub`.
    Keygen {
        #[arg(long)]
        params: PathBuf,
    },
    Sign {
        #[arg(long)]
        params: PathBuf,
        /// Private key file.
        #[arg(long)]
        key: PathBuf,
        /// Message file.
        #[arg(long)]
        msg: PathBuf,
    },
    /// Exits 1 when the signature does not verify.
    Verify {
        #[arg(long)]
        params: PathBuf,
        /// Public key file.
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        msg: PathBuf,
        /// Signature file.
        #[arg(long)]
        sig: PathBuf,
    },
    /// Solve a toy DELP instance.
    Delp {
        /// Parameters file; defaults to the reference entropoid over p = 7.
        #[arg(long)]
        params: Option<PathBuf>,
        /// Generator `x1,x2`; defaults to the params file's `g`.
        #[arg(long)]
        g: Option<String>,
        /// Target `x1,x2`; defaults to a random power of g.
        #[arg(long)]
        target: Option<String>,
        #[arg(long, default_value = "brute")]
        method: String,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
    /// Partition census (with --level), table attack (with --mitm) or
    /// collision entropy experiment (otherwise).
    Analyze {
        #[arg(long)]
        level: Option<u32>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long)]
        mitm: bool,
    },
    /// Reference tables: e7, e11, e13, e19, e23 or dichotomy.
    Tables {
        #[arg(long)]
        which: String,
        #[arg(long)]
        csv: bool,
    },
}

/// Runs `$f::<R>(args..)` with the scalar type suited to a prime of `$bits` bits.
macro_rules! dispatch {
    ($bits:expr, $f:ident($($arg:expr),*)) => {
        match $bits {
            0..=63 => $f::<u64>($($arg),*),
            64..=128 => $f::<Mont<2>>($($arg),*),
            129..=192 => $f::<Mont<3>>($($arg),*),
            193..=256 => $f::<Mont<4>>($($arg),*),
            257..=384 => $f::<Mont<6>>($($arg),*),
            385..=512 => $f::<Mont<8>>($($arg),*),
            _ => $f::<BigUint>($($arg),*),
        }
    };
}

struct Ctx {
    cfg: Config,
    rng: ChaCha20Rng,
}

impl Ctx {
    fn lambda(&self) -> Result<u32, CliError> {
        self.cfg
            .lambda
            .ok_or_else(|| CliError::Usage("--lambda is required".into()))
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        print!("{text}");
        if let Some(out) = &self.cfg.out {
            let p = Path::new(out);
            fs::write(p, text).map_err(|e| CliError::io(p, e))?;
        }
        Ok(())
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::io(path, e))
}

fn write(path: &Path, data: &[u8]) -> Result<(), CliError> {
    fs::write(path, data).map_err(|e| CliError::io(path, e))
}

fn load_params(path: &Path) -> Result<ParamsFile, CliError> {
    ParamsFile::from_kv(&read_kv(path)?)
}

fn fresh_params(ctx: &mut Ctx) -> Result<ParamsFile, CliError> {
    let lambda = ctx.lambda()?;
    let m = gen_safe_prime(lambda, &mut ctx.rng)?;
    let e = EntropoidParams::<BigUint>::random(m, &mut ctx.rng)?;
    Ok(ParamsFile::from_params(&e, None))
}

fn params_or_fresh(ctx: &mut Ctx, path: Option<&Path>) -> Result<ParamsFile, CliError> {
    match path {
        Some(p) => load_params(p),
        None => fresh_params(ctx),
    }
}

fn hexe<R: Residue>(e: &EntropoidParams<R>, x: &Element<R>) -> String {
    hex::encode(e.encode(x))
}

fn cmd_params(ctx: &mut Ctx) -> Result<(), CliError> {
    let pf = fresh_params(ctx)?;
    let e = pf.build::<BigUint>()?;
    print!("{}", pf.to_text());
    println!("zero_star={}", hexe(&e, e.zero_star()));
    println!("one_star={}", hexe(&e, e.one_star()));
    if let Some(out) = &ctx.cfg.out {
        write(Path::new(out), pf.to_text().as_bytes())?;
    }
    Ok(())
}

fn find_generator<R: Residue>(pf: &ParamsFile, sylow: bool, rng: &mut ChaCha20Rng) -> Result<ParamsFile, CliError> {
    let e = pf.build::<R>()?;
    let cert: GeneratorCertificate<R> = if sylow { gen_q(&e, rng)? } else { gen(&e, rng)? };
    let checks: String = cert.checks_passed.iter().map(|&c| if c { '1' } else { '0' }).collect();
    println!("g_hex={}", hexe(&e, &cert.g));
    println!("checks={checks}");
    println!("claimed_order={}", cert.claimed_order);
    Ok(ParamsFile {
        g: Some(e.pair(&cert.g)),
        ..pf.clone()
    })
}

fn cmd_gen(ctx: &mut Ctx, path: Option<&Path>, sylow: bool) -> Result<(), CliError> {
    let pf = params_or_fresh(ctx, path)?;
    let with_g = dispatch!(pf.bits(), find_generator(&pf, sylow, &mut ctx.rng))?;
    ctx.emit(&with_g.to_text())
}

fn kex_demo<R: Residue>(pf: &ParamsFile, base: u32, rng: &mut ChaCha20Rng) -> Result<bool, CliError> {
    let e = pf.build::<R>()?;
    let suite = KexSuite::with_params(e, base, rng)?;
    let mut bob_rng = ChaCha20Rng::seed_from_u64(rng.random());
    let (mut from_alice, mut to_bob) = std::io::pipe().map_err(|e| CliError::io(Path::new("pipe"), e))?;
    let (mut from_bob, mut to_alice) = std::io::pipe().map_err(|e| CliError::io(Path::new("pipe"), e))?;
    let n = suite.message_len();

    let alice = suite.keygen(rng);
    let (bob_public, bob_shared) = std::thread::scope(|s| {
        let bob = s.spawn(|| -> Result<(Vec<u8>, Vec<u8>), CliError> {
            let kp = suite.keygen(&mut bob_rng);
            let mine = suite.encode(&kp.public);
            to_alice.write_all(&mine).map_err(|e| CliError::io(Path::new("pipe"), e))?;
            let mut theirs = vec![0u8; n];
            from_alice.read_exact(&mut theirs).map_err(|e| CliError::io(Path::new("pipe"), e))?;
            let k = suite.derive(&kp, &suite.decode(&theirs)?)?;
            Ok((mine, suite.encode(&k)))
        });
        let sent = suite.encode(&alice.public);
        let _ = to_bob.write_all(&sent);
        bob.join().expect("bob thread")
    })?;
    let mut received = vec![0u8; n];
    from_bob
        .read_exact(&mut received)
        .map_err(|e| CliError::io(Path::new("pipe"), e))?;
    assert_eq!(received, bob_public);
    let alice_shared = suite.encode(&suite.derive(&alice, &suite.decode(&received)?)?);

    let p = suite.params();
    println!("generator={}", hexe(p, suite.generator()));
    println!("alice_public={}", hexe(p, &alice.public));
    println!("bob_public={}", hex::encode(&received));
    println!("alice_shared={}", hex::encode(&alice_shared));
    println!("bob_shared={}", hex::encode(&bob_shared));
    println!("bytes_on_wire={}", 2 * n);
    let agree = alice_shared == bob_shared;
    println!("agree={agree}");
    Ok(agree)
}

fn cmd_kex(ctx: &mut Ctx, path: Option<&Path>) -> Result<(), CliError> {
    if path.is_none() && ctx.cfg.lambda.is_none() {
        ctx.cfg.lambda = Some(128);
    }
    let pf = params_or_fresh(ctx, path)?;
    let base = ctx.cfg.base.unwrap_or(DEFAULT_BASE);
    if dispatch!(pf.bits(), kex_demo(&pf, base, &mut ctx.rng))? {
        Ok(())
    } else {
        Err(CliError::Rejected)
    }
}

fn sig_params<R: Residue>(pf: &ParamsFile, scheme: Scheme, base: u32) -> Result<SigParams<R>, CliError> {
    let e = pf.build::<R>()?;
    let hash = scheme.hash_for(pf.bits()).unwrap_or(HashAlg::Sha256);
    Ok(SigParams::with_options(e, scheme, hash, base)?)
}

fn keygen<R: Residue>(pf: &ParamsFile, scheme: Scheme, base: u32, rng: &mut ChaCha20Rng) -> Result<(Vec<u8>, Vec<u8>), CliError> {
    let sp = sig_params::<R>(pf, scheme, base)?;
    let kp = sp.keygen(rng);
    Ok((sp.encode_key(&kp.private_x), sp.encode_key(&kp.public_y)))
}

fn cmd_keygen(ctx: &mut Ctx, path: &Path) -> Result<(), CliError> {
    let pf = load_params(path)?;
    let scheme = ctx.cfg.scheme.unwrap_or(Scheme::Cderp);
    let base = ctx.cfg.base.unwrap_or(257);
    let (private, public) = dispatch!(pf.bits(), keygen(&pf, scheme, base, &mut ctx.rng))?;
    println!("scheme={}", scheme_name(scheme));
    println!("public={}", hex::encode(&public[3..]));
    match &ctx.cfg.out {
        Some(prefix) => {
            write(Path::new(&format!("{prefix}.key")), &private)?;
            write(Path::new(&format!("{prefix}.pub")), &public)?;
        }
        None => println!("private={}", hex::encode(&private[3..])),
    }
    Ok(())
}

fn sign<R: Residue>(pf: &ParamsFile, key: &[u8], msg: &[u8], rng: &mut ChaCha20Rng) -> Result<Vec<u8>, CliError> {
    let (scheme, base, _) = key_file_info(key)?;
    let sp = sig_params::<R>(pf, scheme, base)?;
    let kp = sp.keypair_from_private(sp.decode_key(key)?);
    Ok(sp.encode_signature(&sp.sign(&kp, msg, rng)?))
}

fn cmd_sign(ctx: &mut Ctx, params: &Path, key: &Path, msg: &Path) -> Result<(), CliError> {
    let pf = load_params(params)?;
    let (key, msg) = (read(key)?, read(msg)?);
    let sig = dispatch!(pf.bits(), sign(&pf, &key, &msg, &mut ctx.rng))?;
    println!("signature={}", hex::encode(&sig));
    if let Some(out) = &ctx.cfg.out {
        write(Path::new(out), &sig)?;
    }
    Ok(())
}

fn verify<R: Residue>(pf: &ParamsFile, key: &[u8], msg: &[u8], sig: &[u8]) -> Result<bool, CliError> {
    let (scheme, base, _) = key_file_info(key)?;
    let sp = sig_params::<R>(pf, scheme, base)?;
    let y = sp.decode_key(key)?;
    Ok(sp.verify_bytes(&y, msg, sig))
}

fn cmd_verify(params: &Path, key: &Path, msg: &Path, sig: &Path) -> Result<(), CliError> {
    let pf = load_params(params)?;
    let (key, msg, sig) = (read(key)?, read(msg)?, read(sig)?);
    if dispatch!(pf.bits(), verify(&pf, &key, &msg, &sig))? {
        println!("valid=true");
        Ok(())
    } else {
        println!("valid=false");
        Err(CliError::Rejected)
    }
}

struct DelpArgs<'a> {
    params: Option<&'a Path>,
    g: Option<&'a str>,
    target: Option<&'a str>,
    method: &'a str,
    budget: u64,
}

fn cmd_delp(ctx: &mut Ctx, a: DelpArgs) -> Result<(), CliError> {
    let pf = match a.params {
        Some(p) => load_params(p)?,
        None => {
            let e = small_entropoid(7)?;
            ParamsFile::from_params(&e, Some((BigUint::from(0u32), BigUint::from(2u32))))
        }
    };
    if pf.bits() > 63 {
        return Err(CliError::Usage("delp runs on toy primes only".into()));
    }
    let e = pf.build::<u64>()?;
    let g = match a.g {
        Some(s) => parse_pair(s)?,
        None => pf
            .g
            .clone()
            .ok_or_else(|| CliError::Usage("no generator: pass --g or a params file with g".into()))?,
    };
    let g = e.element(&g.0, &g.1);
    let base = ctx.cfg.base.unwrap_or(5);
    let y = match a.target {
        Some(s) => {
            let (x1, x2) = parse_pair(s)?;
            e.element(&x1, &x2)
        }
        None => {
            let pm1 = e.p() - 1u32;
            let idx = random_index(base, &(&pm1 * &pm1), &mut ctx.rng)?;
            pow_fast(&e, &g, &idx)
        }
    };
    println!("g={}", e.show(&g));
    println!("target={}", e.show(&y));
    let found: Option<PowerIndex> = match a.method {
        "brute" => delp_brute(&e, &g, &y, base)?,
        "random" => delp_random(&e, &g, &y, a.budget, &mut ctx.rng),
        m => return Err(CliError::Usage(format!("unknown method {m}"))),
    };
    match found {
        Some(idx) => {
            println!("index={idx}");
            println!("verified={}", pow_fast(&e, &g, &idx) == y);
            Ok(())
        }
        None => {
            println!("index=none");
            Err(CliError::Rejected)
        }
    }
}

fn cmd_analyze(ctx: &mut Ctx, level: Option<u32>, trials: usize, mitm: bool) -> Result<(), CliError> {
    if let Some(i) = level {
        let base = ctx.cfg.base.unwrap_or(4);
        let (e, g) = dichotomy_entropoid()?;
        let rep = partition_xi(&e, &g, base, i)?;
        return ctx.emit(&partitions_to_csv(&[rep]));
    }
    let lambda = ctx.lambda()?;
    if mitm {
        let m = gen_safe_prime(lambda, &mut ctx.rng)?;
        let e = EntropoidParams::<u64>::random(m, &mut ctx.rng)?;
        let sp = SigParams::with_options(e, Scheme::Cderp, HashAlg::Sha256, ctx.cfg.base.unwrap_or(17))?;
        let st = mitm_success_rate(&sp, trials, &mut ctx.rng)?;
        let text = format!(
            "p={}\ntrials={}\nsuccesses={}\nrate={:.3}\ntarget={}\nroots_found={}\n",
            sp.params().p(),
            st.trials,
            st.successes,
            st.rate,
            st.target,
            st.roots_found
        );
        return ctx.emit(&text);
    }
    if lambda > 63 {
        return Err(CliError::Usage("collision experiments run on primes below 2^63".into()));
    }
    let base = ctx.cfg.base.unwrap_or(7);
    let (e, g) = random_instance(lambda, &mut ctx.rng)?;
    let h2 = collision_entropy_experiment(&e, &g, base, &mut ctx.rng, trials);
    let text = format!(
        "estimator={COLLISION_ESTIMATOR}\np={}\nlambda={lambda}\nbase={base}\ntrials={trials}\nh2={h2:.4}\n",
        e.p()
    );
    ctx.emit(&text)
}

fn cmd_tables(ctx: &mut Ctx, which: &str, csv: bool) -> Result<(), CliError> {
    let set: TableSet = which.parse()?;
    let mut text = String::new();
    for t in reproduce_tables(set)? {
        if csv {
            text.push_str(&format!("# {}\n{}\n", t.title, t.to_csv()));
        } else {
            text.push_str(&format!("{t}\n"));
        }
    }
    ctx.emit(&text)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file_cfg = match &cli.config {
        Some(p) => Config::from_kv(&read_kv(p)?)?,
        None => Config::default(),
    };
    let cfg = file_cfg.merged(Config {
        lambda: cli.lambda,
        base: cli.base,
        scheme: cli.scheme,
        seed: cli.seed,
        out: cli.out.clone(),
    });
    let rng = match cfg.seed {
        Some(s) => ChaCha20Rng::seed_from_u64(s),
        None => ChaCha20Rng::from_os_rng(),
    };
    let mut ctx = Ctx { cfg, rng };
    match &cli.cmd {
        Cmd::Params => cmd_params(&mut ctx),
        Cmd::Gen { params } => cmd_gen(&mut ctx, params.as_deref(), false),
        Cmd::Genq { params } => cmd_gen(&mut ctx, params.as_deref(), true),
        Cmd::KexDemo { params } => cmd_kex(&mut ctx, params.as_deref()),
        Cmd::Keygen { params } => cmd_keygen(&mut ctx, params),
        Cmd::Sign { params, key, msg } => cmd_sign(&mut ctx, params, key, msg),
        Cmd::Verify { params, key, msg, sig } => cmd_verify(params, key, msg, sig),
        Cmd::Delp {
            params,
            g,
            target,
            method,
            budget,
        } => cmd_delp(
            &mut ctx,
            DelpArgs {
                params: params.as_deref(),
                g: g.as_deref(),
                target: target.as_deref(),
                method,
                budget: *budget,
            },
        ),
        Cmd::Analyze { level, trials, mitm } => cmd_analyze(&mut ctx, *level, *trials, *mitm),
        Cmd::Tables { which, csv } => cmd_tables(&mut ctx, which, *csv),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
